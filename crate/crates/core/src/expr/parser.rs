//! Hand-written lexer and recursive-descent parser.

use super::{BinOp, Func, Node, ParseError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { offset, message: message.into() }
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                out.push(Token { tok: Tok::Op(c as char), offset: i });
                i += 1;
            }
            b'(' => {
                out.push(Token { tok: Tok::LParen, offset: i });
                i += 1;
            }
            b')' => {
                out.push(Token { tok: Tok::RParen, offset: i });
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let value: f64 = text
                    .parse()
                    .map_err(|_| syntax(start, format!("malformed number `{text}`")))?;
                out.push(Token { tok: Tok::Num(value), offset: start });
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(src[start..i].to_string()), offset: start });
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        }
    }
    out.push(Token { tok: Tok::End, offset: src.len() });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    coords: &'a [String],
    constants: &'a [(String, f64)],
}

pub(super) fn parse(
    src: &str,
    coords: &[String],
    constants: &[(String, f64)],
) -> Result<Node, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, coords, constants };
    if p.peek().tok == Tok::End {
        return Err(syntax(0, "empty expression"));
    }
    let node = p.sum()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(t.offset, "expected operator or end of expression"));
    }
    Ok(node)
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek().tok {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn product(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        if self.peek().tok == Tok::Op('-') {
            self.bump();
            let inner = self.unary()?;
            return Ok(Node::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.primary()?;
        if self.peek().tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let exponent = self.unary()?;
        Ok(match integer_literal(&exponent) {
            Some(k) => Node::PowI(Box::new(base), k),
            None => Node::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)),
        })
    }

    fn primary(&mut self) -> Result<Node, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Num(v) => Ok(Node::Num(v)),
            Tok::LParen => {
                let inner = self.sum()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if let Some(i) = self.coords.iter().position(|c| *c == name) {
                    return Ok(Node::Coord(i));
                }
                if let Some(i) = self.constants.iter().position(|(c, _)| *c == name) {
                    return Ok(Node::Const(i));
                }
                if let Some(func) = Func::from_name(&name) {
                    let open = self.bump();
                    if open.tok != Tok::LParen {
                        return Err(syntax(
                            open.offset,
                            format!("function `{name}` requires parentheses"),
                        ));
                    }
                    let arg = self.sum()?;
                    self.expect_rparen()?;
                    return Ok(Node::Call(func, Box::new(arg)));
                }
                Err(ParseError::UnknownIdentifier { name, offset: t.offset })
            }
            Tok::End => Err(syntax(t.offset, "unexpected end of expression")),
            Tok::RParen => Err(syntax(t.offset, "unexpected `)`")),
            Tok::Op(c) => Err(syntax(t.offset, format!("unexpected operator `{c}`"))),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let t = self.bump();
        if t.tok == Tok::RParen {
            Ok(())
        } else {
            Err(syntax(t.offset, "expected `)`"))
        }
    }
}

fn integer_literal(node: &Node) -> Option<i32> {
    let as_int = |v: f64| {
        (v.fract() == 0.0 && v.abs() <= i32::MAX as f64).then_some(v as i32)
    };
    match node {
        Node::Num(v) => as_int(*v),
        Node::Neg(inner) => match **inner {
            Node::Num(v) => as_int(v).map(|k| -k),
            _ => None,
        },
        _ => None,
    }
}
