//! A small arithmetic expression language for chart components.
//!
//! Grammar (whitespace-insensitive), in decreasing precedence:
//!
//! ```text
//! power   :=  atom [ '^' unary ]              (right-associative)
//! unary   :=  '-' unary | power
//! term    :=  unary { ('*' | '/') unary }     (left-associative)
//! expr    :=  term  { ('+' | '-') term }      (left-associative)
//! atom    :=  number | variable | function '(' expr ')' | '(' expr ')'
//! ```
//!
//! so `^` binds tighter than unary minus, which binds tighter than `*` `/`,
//! which bind tighter than `+` `-`: `-2^2 = -4`, `2^-3 = 1/8`. The function
//! set is fixed — `sin`, `cos`, `exp`, `sqrt` — and anything else that looks
//! like a name is a variable, resolved at evaluation time. Parse errors
//! carry the 1-based byte offset at which the parser stopped.

use std::fmt;

use crate::error::{Error, Result};

/// Built-in unary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Sin,
    Cos,
    Exp,
    Sqrt,
}

impl Function {
    fn name(&self) -> &'static str {
        match self {
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Exp => "exp",
            Function::Sqrt => "sqrt",
        }
    }

    fn by_name(name: &str) -> Option<Function> {
        match name {
            "sin" => Some(Function::Sin),
            "cos" => Some(Function::Cos),
            "exp" => Some(Function::Exp),
            "sqrt" => Some(Function::Sqrt),
            _ => None,
        }
    }

    fn apply(&self, x: f64) -> Result<f64> {
        match self {
            Function::Sin => Ok(x.sin()),
            Function::Cos => Ok(x.cos()),
            Function::Exp => Ok(x.exp()),
            Function::Sqrt => {
                if x < 0.0 {
                    Err(Error::Eval(format!("square root of negative value {x}")))
                } else {
                    Ok(x.sqrt())
                }
            }
        }
    }
}

/// Binary operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(&self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::Mul | BinaryOp::Div => 2,
            BinaryOp::Pow => 4,
        }
    }
}

/// Abstract syntax of one expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Expression {
    Number(f64),
    Variable(String),
    Negate(Box<Expression>),
    Binary(BinaryOp, Box<Expression>, Box<Expression>),
    Call(Function, Box<Expression>),
}

const NEGATE_PRECEDENCE: u8 = 3;
const ATOM_PRECEDENCE: u8 = 5;

impl Expression {
    fn precedence(&self) -> u8 {
        match self {
            Expression::Number(_) | Expression::Variable(_) | Expression::Call(..) => {
                ATOM_PRECEDENCE
            }
            Expression::Negate(_) => NEGATE_PRECEDENCE,
            Expression::Binary(op, ..) => op.precedence(),
        }
    }

    /// Evaluates under a variable binding; unbound variables, division by
    /// zero, domain errors, and non-finite intermediates all surface as
    /// [`Error::Eval`].
    pub fn evaluate<F>(&self, lookup: &F) -> Result<f64>
    where
        F: Fn(&str) -> Option<f64>,
    {
        let value = match self {
            Expression::Number(x) => *x,
            Expression::Variable(name) => {
                lookup(name).ok_or_else(|| Error::Eval(format!("unknown variable `{name}`")))?
            }
            Expression::Negate(inner) => -inner.evaluate(lookup)?,
            Expression::Binary(op, lhs, rhs) => {
                let a = lhs.evaluate(lookup)?;
                let b = rhs.evaluate(lookup)?;
                match op {
                    BinaryOp::Add => a + b,
                    BinaryOp::Sub => a - b,
                    BinaryOp::Mul => a * b,
                    BinaryOp::Div => {
                        if b == 0.0 {
                            return Err(Error::Eval("division by zero".to_string()));
                        }
                        a / b
                    }
                    BinaryOp::Pow => a.powf(b),
                }
            }
            Expression::Call(function, argument) => function.apply(argument.evaluate(lookup)?)?,
        };
        if !value.is_finite() {
            return Err(Error::Eval("non-finite result".to_string()));
        }
        Ok(value)
    }

    /// Collects the distinct variable names, in first-appearance order.
    pub fn variables(&self) -> Vec<String> {
        let mut names = Vec::new();
        self.collect_variables(&mut names);
        names
    }

    fn collect_variables(&self, names: &mut Vec<String>) {
        match self {
            Expression::Number(_) => {}
            Expression::Variable(name) => {
                if !names.iter().any(|n| n == name) {
                    names.push(name.clone());
                }
            }
            Expression::Negate(inner) => inner.collect_variables(names),
            Expression::Binary(_, lhs, rhs) => {
                lhs.collect_variables(names);
                rhs.collect_variables(names);
            }
            Expression::Call(_, argument) => argument.collect_variables(names),
        }
    }

    /// Pretty-prints with minimal parentheses; `parse ∘ print` is the
    /// identity on parser-producible syntax trees.
    fn write(&self, f: &mut fmt::Formatter<'_>, min_precedence: u8) -> fmt::Result {
        let wrap = self.precedence() < min_precedence;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Expression::Number(x) => write!(f, "{x}")?,
            Expression::Variable(name) => f.write_str(name)?,
            Expression::Negate(inner) => {
                f.write_str("-")?;
                inner.write(f, NEGATE_PRECEDENCE + 1)?;
            }
            Expression::Binary(op, lhs, rhs) => {
                let p = op.precedence();
                let (left_min, right_min) = if *op == BinaryOp::Pow {
                    (p + 1, p) // right-associative
                } else {
                    (p, p + 1) // left-associative
                };
                lhs.write(f, left_min)?;
                match op {
                    BinaryOp::Add | BinaryOp::Sub => write!(f, " {} ", op.symbol())?,
                    _ => f.write_str(op.symbol())?,
                }
                rhs.write(f, right_min)?;
            }
            Expression::Call(function, argument) => {
                f.write_str(function.name())?;
                f.write_str("(")?;
                argument.write(f, 0)?;
                f.write_str(")")?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// Parses one expression; the whole input must be consumed.
pub fn parse_expression(text: &str) -> Result<Expression> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let expression = parser.expr()?;
    parser.skip_whitespace();
    if parser.pos < parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expression)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_whitespace(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_whitespace();
        self.bytes.get(self.pos).copied()
    }

    fn accept(&mut self, expected: u8) -> bool {
        if self.peek() == Some(expected) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinaryOp::Add,
                Some(b'-') => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expression::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinaryOp::Mul,
                Some(b'/') => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expression::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expression> {
        if self.accept(b'-') {
            Ok(Expression::Negate(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expression> {
        let base = self.atom()?;
        if self.accept(b'^') {
            // Right-associative, and the exponent may start with a sign.
            let exponent = self.unary()?;
            Ok(Expression::Binary(
                BinaryOp::Pow,
                Box::new(base),
                Box::new(exponent),
            ))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expression> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.accept(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.name(),
            Some(_) => Err(self.error("expected a number, name, or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expression> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'.' {
            self.pos += 1;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if self.pos < self.bytes.len() && matches!(self.bytes[self.pos], b'e' | b'E') {
            let mark = self.pos;
            self.pos += 1;
            if self.pos < self.bytes.len() && matches!(self.bytes[self.pos], b'+' | b'-') {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                // Not an exponent after all (e.g. `2*e` would be a name).
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let value: f64 = text.parse().map_err(|_| {
            let parser = Parser {
                bytes: self.bytes,
                pos: start,
            };
            parser.error("malformed number literal")
        })?;
        if !value.is_finite() {
            self.pos = start;
            return Err(self.error("number literal overflows double precision"));
        }
        Ok(Expression::Number(value))
    }

    fn name(&mut self) -> Result<Expression> {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii name")
            .to_string();
        if let Some(function) = Function::by_name(&name) {
            if !self.accept(b'(') {
                return Err(
                    self.error(&format!("function `{name}` needs a parenthesized argument"))
                );
            }
            let argument = self.expr()?;
            if !self.accept(b')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(Expression::Call(function, Box::new(argument)));
        }
        Ok(Expression::Variable(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval2(text: &str, u: f64, v: f64) -> Result<f64> {
        parse_expression(text)?.evaluate(&|name| match name {
            "u" => Some(u),
            "v" => Some(v),
            _ => None,
        })
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(eval2("u^2 - v^2", 1.0, 2.0).unwrap(), -3.0);
        assert_eq!(eval2("2*u*v", 1.0, 2.0).unwrap(), 4.0);
        assert_eq!(eval2("1 + 2 * 3", 0.0, 0.0).unwrap(), 7.0);
        assert_eq!(eval2("(1 + 2) * 3", 0.0, 0.0).unwrap(), 9.0);
    }

    #[test]
    fn precedence_of_power_and_unary_minus() {
        // ^ binds tighter than unary minus …
        assert_eq!(eval2("-2^2", 0.0, 0.0).unwrap(), -4.0);
        // … and unary minus binds tighter than * and /.
        assert_eq!(eval2("-2*3", 0.0, 0.0).unwrap(), -6.0);
        assert_eq!(eval2("2^-3", 0.0, 0.0).unwrap(), 0.125);
        // ^ is right-associative: 2^(3^2), not (2^3)^2.
        assert_eq!(eval2("2^3^2", 0.0, 0.0).unwrap(), 512.0);
        // - is left-associative.
        assert_eq!(eval2("8 - 4 - 2", 0.0, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn functions_evaluate() {
        assert!((eval2("sin(u)", 0.5, 0.0).unwrap() - 0.5_f64.sin()).abs() < 1e-15);
        assert!((eval2("cos(0)", 0.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((eval2("exp(1)", 0.0, 0.0).unwrap() - std::f64::consts::E).abs() < 1e-15);
        assert_eq!(eval2("sqrt(2.25)", 0.0, 0.0).unwrap(), 1.5);
    }

    #[test]
    fn unclosed_parenthesis_offset() {
        match parse_expression("sin(u") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn trailing_input_rejected() {
        assert!(matches!(
            parse_expression("1 + 2 )"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn evaluation_errors() {
        assert!(matches!(eval2("1/0", 0.0, 0.0), Err(Error::Eval(_))));
        assert!(matches!(eval2("sqrt(-1)", 0.0, 0.0), Err(Error::Eval(_))));
        assert!(matches!(eval2("w + 1", 0.0, 0.0), Err(Error::Eval(_))));
        assert!(matches!(eval2("exp(1000)", 0.0, 0.0), Err(Error::Eval(_))));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_expression("u^2-v^2").unwrap();
        let b = parse_expression("  u ^ 2    -\tv ^ 2 ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scientific_literals() {
        assert_eq!(eval2("1.5e2", 0.0, 0.0).unwrap(), 150.0);
        assert_eq!(eval2("2E-2", 0.0, 0.0).unwrap(), 0.02);
        // `e` not followed by an exponent is left for the next token.
        assert!(matches!(parse_expression("1e"), Err(Error::Parse { .. })));
    }

    #[test]
    fn print_then_parse_is_identity() {
        for text in [
            "u^2 - v^2",
            "2*u*v",
            "-u^2",
            "(-u)^2",
            "u - (v - 1)",
            "sin(u)*cos(v) + exp(-u/2)",
            "2^-3^2",
            "sqrt(u^2 + v^2)",
            "-(u + v)/3",
        ] {
            let parsed = parse_expression(text).unwrap();
            let printed = parsed.to_string();
            let reparsed = parse_expression(&printed)
                .unwrap_or_else(|e| panic!("printed form `{printed}` failed: {e}"));
            assert_eq!(parsed, reparsed, "round-trip of `{text}` via `{printed}`");
        }
    }

    #[test]
    fn variables_collected_in_order() {
        let e = parse_expression("v + u*v - sin(w)").unwrap();
        assert_eq!(e.variables(), vec!["v", "u", "w"]);
    }
}
