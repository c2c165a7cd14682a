//! Small arithmetic expression evaluator for boundary data and right-hand
//! sides given on the command line or in problem files. Variables are `x1`,
//! `x2`, and `r` (the distance to the origin); `pi` is a constant.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Var {
    X1,
    X2,
    R,
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy)]
enum Fn1 {
    Sin,
    Cos,
    Tan,
    Atan,
    Asin,
    Acos,
    Sqrt,
    Abs,
    Exp,
    Ln,
    Log10,
}

#[derive(Debug, Clone, Copy)]
enum Fn2 {
    Min,
    Max,
    Hypot,
    Atan2,
    Pow,
}

/// A parsed expression, evaluated per grid node without reparsing.
#[derive(Debug, Clone)]
pub struct Expr(Node);

#[derive(Debug, Clone)]
enum Node {
    Num(f64),
    Var(Var),
    Neg(Box<Node>),
    Bin(Op, Box<Node>, Box<Node>),
    Call1(Fn1, Box<Node>),
    Call2(Fn2, Box<Node>, Box<Node>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub at: usize,
    pub what: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.what, self.at)
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ParseError> {
        let mut p = Parser {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.err("trailing input"));
        }
        Ok(Expr(e))
    }

    pub fn eval(&self, x1: f64, x2: f64) -> f64 {
        self.0.eval(x1, x2)
    }
}

impl Node {
    fn eval(&self, x1: f64, x2: f64) -> f64 {
        match self {
            Node::Num(v) => *v,
            Node::Var(Var::X1) => x1,
            Node::Var(Var::X2) => x2,
            Node::Var(Var::R) => x1.hypot(x2),
            Node::Neg(e) => -e.eval(x1, x2),
            Node::Bin(op, a, b) => {
                let (a, b) = (a.eval(x1, x2), b.eval(x1, x2));
                match op {
                    Op::Add => a + b,
                    Op::Sub => a - b,
                    Op::Mul => a * b,
                    Op::Div => a / b,
                    Op::Pow => a.powf(b),
                }
            }
            Node::Call1(f, e) => {
                let v = e.eval(x1, x2);
                match f {
                    Fn1::Sin => v.sin(),
                    Fn1::Cos => v.cos(),
                    Fn1::Tan => v.tan(),
                    Fn1::Atan => v.atan(),
                    Fn1::Asin => v.asin(),
                    Fn1::Acos => v.acos(),
                    Fn1::Sqrt => v.sqrt(),
                    Fn1::Abs => v.abs(),
                    Fn1::Exp => v.exp(),
                    Fn1::Ln => v.ln(),
                    Fn1::Log10 => v.log10(),
                }
            }
            Node::Call2(f, a, b) => {
                let (a, b) = (a.eval(x1, x2), b.eval(x1, x2));
                match f {
                    Fn2::Min => a.min(b),
                    Fn2::Max => a.max(b),
                    Fn2::Hypot => a.hypot(b),
                    Fn2::Atan2 => a.atan2(b),
                    Fn2::Pow => a.powf(b),
                }
            }
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, what: &str) -> ParseError {
        ParseError {
            at: self.pos,
            what: what.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Node::Bin(Op::Add, Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = Node::Bin(Op::Sub, Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = Node::Bin(Op::Mul, Box::new(acc), Box::new(self.power()?));
            } else if self.eat(b'/') {
                acc = Node::Bin(Op::Div, Box::new(acc), Box::new(self.power()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.unary()?;
        if self.eat(b'^') {
            let exp = self.power()?;
            return Ok(Node::Bin(Op::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.eat(b'-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            _ => Err(self.err("expected a number, name, or '('")),
        }
    }

    fn number(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        while let Some(&c) = self.bytes.get(self.pos) {
            if c.is_ascii_digit() || c == b'.' {
                self.pos += 1;
            } else if (c == b'e' || c == b'E')
                && self
                    .bytes
                    .get(self.pos + 1)
                    .is_some_and(|&d| d.is_ascii_digit() || d == b'+' || d == b'-')
            {
                self.pos += 2;
            } else {
                break;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        text.parse::<f64>().map(Node::Num).map_err(|_| ParseError {
            at: start,
            what: format!("bad number '{text}'"),
        })
    }

    fn ident(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
        match name {
            "x1" => return Ok(Node::Var(Var::X1)),
            "x2" => return Ok(Node::Var(Var::X2)),
            "r" => return Ok(Node::Var(Var::R)),
            "pi" => return Ok(Node::Num(std::f64::consts::PI)),
            _ => {}
        }
        if !self.eat(b'(') {
            return Err(ParseError {
                at: start,
                what: format!("unknown name '{name}'"),
            });
        }
        let first = self.expr()?;
        let one = |f| Ok(Node::Call1(f, Box::new(first.clone())));
        if self.eat(b')') {
            return match name {
                "sin" => one(Fn1::Sin),
                "cos" => one(Fn1::Cos),
                "tan" => one(Fn1::Tan),
                "atan" => one(Fn1::Atan),
                "asin" => one(Fn1::Asin),
                "acos" => one(Fn1::Acos),
                "sqrt" => one(Fn1::Sqrt),
                "abs" => one(Fn1::Abs),
                "exp" => one(Fn1::Exp),
                "ln" => one(Fn1::Ln),
                "log10" => one(Fn1::Log10),
                _ => Err(ParseError {
                    at: start,
                    what: format!("unknown function '{name}'"),
                }),
            };
        }
        if !self.eat(b',') {
            return Err(self.err("expected ',' or ')'"));
        }
        let second = self.expr()?;
        if !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        let two = |f| {
            Ok(Node::Call2(
                f,
                Box::new(first.clone()),
                Box::new(second.clone()),
            ))
        };
        match name {
            "min" => two(Fn2::Min),
            "max" => two(Fn2::Max),
            "hypot" => two(Fn2::Hypot),
            "atan2" => two(Fn2::Atan2),
            "pow" => two(Fn2::Pow),
            _ => Err(ParseError {
                at: start,
                what: format!("unknown function '{name}'"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(text: &str, x1: f64, x2: f64) -> f64 {
        Expr::parse(text).unwrap().eval(x1, x2)
    }

    #[test]
    fn arithmetic_follows_precedence() {
        assert_eq!(eval("1 + 2 * 3", 0.0, 0.0), 7.0);
        assert_eq!(eval("(1 + 2) * 3", 0.0, 0.0), 9.0);
        assert_eq!(eval("2 ^ 3 ^ 2", 0.0, 0.0), 512.0);
        assert_eq!(eval("-2 ^ 2", 0.0, 0.0), 4.0);
        assert_eq!(eval("6 / 3 / 2", 0.0, 0.0), 1.0);
    }

    #[test]
    fn variables_and_functions_evaluate() {
        assert_eq!(eval("x1 * x2", 3.0, 4.0), 12.0);
        assert_eq!(eval("r", 3.0, 4.0), 5.0);
        assert!((eval("0.5 * ln(x1^2 + x2^2)", 3.0, 4.0) - 5.0f64.ln()).abs() < 1e-15);
        assert_eq!(eval("max(x1, x2)", 3.0, 4.0), 4.0);
        assert!((eval("sin(pi)", 0.0, 0.0)).abs() < 1e-15);
        assert_eq!(eval("1.5e2", 0.0, 0.0), 150.0);
    }

    #[test]
    fn bad_input_is_rejected_with_position() {
        assert!(Expr::parse("1 +").is_err());
        assert!(Expr::parse("foo(1)").is_err());
        assert!(Expr::parse("x3").is_err());
        assert!(Expr::parse("(1 + 2").is_err());
        assert!(Expr::parse("1 2").is_err());
        assert_eq!(Expr::parse("x3").unwrap_err().at, 0);
    }
}
