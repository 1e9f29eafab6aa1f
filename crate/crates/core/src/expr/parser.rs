use std::sync::Arc;

use super::ast::{BinOp, Constant, Expression, Func, Node};
use super::error::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(text: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
        let mut out = Vec::new();
        loop {
            lx.skip_ws();
            let start = lx.pos;
            let Some(&c) = lx.src.get(lx.pos) else {
                out.push((Tok::End, start));
                return Ok(out);
            };
            let tok = match c {
                b'0'..=b'9' | b'.' => lx.number()?,
                b'a'..=b'z' | b'A'..=b'Z' => lx.ident(),
                b'+' | b'-' | b'*' | b'/' | b'^' => {
                    lx.pos += 1;
                    Tok::Op(c as char)
                }
                b'(' => {
                    lx.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    lx.pos += 1;
                    Tok::RParen
                }
                b',' => {
                    lx.pos += 1;
                    Tok::Comma
                }
                _ => {
                    return Err(ParseError::syntax(
                        start,
                        format!("unexpected character {:?}", text[start..].chars().next().unwrap_or('?')),
                    ))
                }
            };
            out.push((tok, start));
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        self.pos - start
    }

    fn number(&mut self) -> Result<Tok, ParseError> {
        let start = self.pos;
        let mut n = self.digits();
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += self.digits();
        }
        if n == 0 {
            return Err(ParseError::syntax(start, "malformed number"));
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                // `2e` is the number 2 followed by the constant e: not allowed
                // without an operator, so report it here.
                self.pos = save;
                return Err(ParseError::syntax(save, "malformed exponent in number"));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<f64>()
            .map(Tok::Num)
            .map_err(|_| ParseError::syntax(start, "malformed number"))
    }

    fn ident(&mut self) -> Tok {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    coords: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::syntax(self.offset(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Node::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = Node::binary(op, lhs, rhs);
        }
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let exponent = self.atom()?;
        if exponent.has_vars() {
            return Err(ParseError::new(at, ParseErrorKind::NonConstantExponent));
        }
        Ok(Node::Pow(Box::new(base), Box::new(exponent)))
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(v) => Ok(Node::Num(v)),
            Tok::Op('-') => Ok(Node::Minus(Box::new(self.atom()?))),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.call(name, at)
                } else if let Some(i) = self.coords.iter().position(|c| *c == name) {
                    Ok(Node::Var(i))
                } else if name == "pi" {
                    Ok(Node::Const(Constant::Pi))
                } else if name == "e" {
                    Ok(Node::Const(Constant::E))
                } else if Func::from_name(&name).is_some() {
                    Err(ParseError::new(
                        at,
                        ParseErrorKind::WrongArity { name, expected: 1, found: 0 },
                    ))
                } else {
                    Err(ParseError::new(at, ParseErrorKind::UnknownIdentifier(name)))
                }
            }
            Tok::End => Err(ParseError::syntax(at, "unexpected end of input")),
            t => Err(ParseError::syntax(at, format!("unexpected token {}", describe(&t)))),
        }
    }

    fn call(&mut self, name: String, at: usize) -> Result<Node, ParseError> {
        self.bump();
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            args.push(self.expr()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                args.push(self.expr()?);
            }
        }
        self.expect(Tok::RParen, "')'")?;
        let expected = if Func::from_name(&name).is_some() {
            1
        } else if name == "pi" || name == "e" || self.coords.contains(&name) {
            0
        } else {
            return Err(ParseError::new(at, ParseErrorKind::UnknownIdentifier(name)));
        };
        if args.len() != expected {
            return Err(ParseError::new(
                at,
                ParseErrorKind::WrongArity { name, expected, found: args.len() },
            ));
        }
        let func = Func::from_name(&name).expect("checked above");
        Ok(Node::Call(func, Box::new(args.pop().expect("one argument"))))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("number {v}"),
        Tok::Ident(s) => format!("identifier {s}"),
        Tok::Op(c) => format!("'{c}'"),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses `text` over the coordinate names `coords`.
pub fn parse(text: &str, coords: &[String]) -> Result<Expression, ParseError> {
    parse_shared(text, Arc::from(coords))
}

/// Like [`parse`], reusing an existing coordinate list.
pub fn parse_shared(text: &str, coords: Arc<[String]>) -> Result<Expression, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::syntax(0, "empty expression"));
    }
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, i: 0, coords: &coords };
    let root = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::syntax(p.offset(), format!("unexpected token {}", describe(p.peek()))));
    }
    Ok(Expression::from_node(root, coords))
}
