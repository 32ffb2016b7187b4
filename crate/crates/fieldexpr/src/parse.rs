//! Lexer and recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr   := term  (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" unary)?          exponent must be constant
//! atom   := NUMBER | "x" | "y" | "z" | IDENT "(" expr ")" | "(" expr ")"
//! ```
//!
//! Diagnostics carry 1-based line/column and the set of expected tokens.

use crate::ast::{BinOp, Expr, Func};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("parse error at {line}:{col}: {message} (expected {})", expected.join(", "))]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number `{v}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

type Spanned = (Tok, usize, usize); // token, line, col

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let (line, col) = (self.line, self.col);
            let c = self.src[self.pos];
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'+' => {
                    self.bump();
                    out.push((Tok::Plus, line, col));
                }
                b'-' => {
                    self.bump();
                    out.push((Tok::Minus, line, col));
                }
                b'*' => {
                    self.bump();
                    out.push((Tok::Star, line, col));
                }
                b'/' => {
                    self.bump();
                    out.push((Tok::Slash, line, col));
                }
                b'^' => {
                    self.bump();
                    out.push((Tok::Caret, line, col));
                }
                b'(' => {
                    self.bump();
                    out.push((Tok::LParen, line, col));
                }
                b')' => {
                    self.bump();
                    out.push((Tok::RParen, line, col));
                }
                b'0'..=b'9' | b'.' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && matches!(self.src[self.pos], b'0'..=b'9' | b'.')
                    {
                        self.bump();
                    }
                    // optional exponent
                    if self.pos < self.src.len() && matches!(self.src[self.pos], b'e' | b'E') {
                        let save = (self.pos, self.line, self.col);
                        self.bump();
                        if self.pos < self.src.len() && matches!(self.src[self.pos], b'+' | b'-')
                        {
                            self.bump();
                        }
                        if self.pos < self.src.len()
                            && self.src[self.pos].is_ascii_digit()
                        {
                            while self.pos < self.src.len()
                                && self.src[self.pos].is_ascii_digit()
                            {
                                self.bump();
                            }
                        } else {
                            (self.pos, self.line, self.col) = save;
                        }
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let value: f64 = text.parse().map_err(|_| ParseError {
                        line,
                        col,
                        message: format!("malformed number `{text}`"),
                        expected: vec!["number"],
                    })?;
                    out.push((Tok::Num(value), line, col));
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && matches!(self.src[self.pos], b'a'..=b'z' | b'A'..=b'Z' | b'0'..=b'9' | b'_')
                    {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    out.push((Tok::Ident(text.to_string()), line, col));
                }
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("unexpected character `{}`", other as char),
                        expected: vec!["expression"],
                    });
                }
            }
        }
        out.push((Tok::Eof, self.line, self.col));
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>, expected: Vec<&'static str>) -> ParseError {
        let (_, line, col) = self.peek();
        ParseError {
            line: *line,
            col: *col,
            message: message.into(),
            expected,
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().0 {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.advance();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().0 {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.advance();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek().0, Tok::Minus) {
            self.advance();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek().0, Tok::Caret) {
            self.advance();
            let exp_span = (self.peek().1, self.peek().2);
            let exponent = self.unary()?;
            if exponent.contains_variable() {
                return Err(ParseError {
                    line: exp_span.0,
                    col: exp_span.1,
                    message: "exponent must be a constant".into(),
                    expected: vec!["constant exponent"],
                });
            }
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, line, col) = self.advance();
        match tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::Var(0)),
                "y" => Ok(Expr::Var(1)),
                "z" => Ok(Expr::Var(2)),
                _ => {
                    if let Some(func) = Func::from_name(&name) {
                        if !matches!(self.peek().0, Tok::LParen) {
                            return Err(self.error(
                                format!("function `{name}` requires parenthesized argument"),
                                vec!["`(`"],
                            ));
                        }
                        self.advance();
                        let arg = self.expr()?;
                        if !matches!(self.peek().0, Tok::RParen) {
                            return Err(self.error("unclosed function call", vec!["`)`"]));
                        }
                        self.advance();
                        Ok(Expr::Call(func, Box::new(arg)))
                    } else {
                        Err(ParseError {
                            line,
                            col,
                            message: format!("unknown identifier `{name}`"),
                            expected: vec![
                                "x", "y", "z", "sin", "cos", "exp", "log", "sqrt", "tanh",
                                "cosh", "sinh", "abs",
                            ],
                        })
                    }
                }
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if !matches!(self.peek().0, Tok::RParen) {
                    return Err(self.error("unclosed parenthesis", vec!["`)`"]));
                }
                self.advance();
                Ok(inner)
            }
            other => Err(ParseError {
                line,
                col,
                message: format!("unexpected {}", other.describe()),
                expected: vec!["number", "variable", "function", "`(`", "`-`"],
            }),
        }
    }
}

/// Parse a source string into an expression tree.
pub fn parse_expr(source: &str) -> Result<Expr, ParseError> {
    let tokens = Lexer::new(source).tokens()?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    if !matches!(parser.peek().0, Tok::Eof) {
        return Err(parser.error(
            format!("unexpected {}", parser.peek().0.describe()),
            vec!["operator", "end of input"],
        ));
    }
    Ok(expr)
}
