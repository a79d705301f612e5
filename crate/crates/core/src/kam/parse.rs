//! `Define name params = term ;;` programs.

use super::encode::nat_term;
use super::{Program, ProgramError, SyntaxError, Term};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Define,
    Ident(String),
    Binder(String),
    Int(u64),
    Backslash,
    Dot,
    LParen,
    RParen,
    Eq,
    End,
    TypeDummy,
    Eof,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: usize,
    col: usize,
    after_backslash: bool,
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.char_indices().peekable(),
            src,
            line: 1,
            col: 1,
            after_backslash: false,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    fn peek2(&mut self) -> Option<char> {
        let (i, c) = *self.chars.peek()?;
        self.src[i + c.len_utf8()..].chars().next()
    }

    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn next(&mut self) -> Result<(Tok, usize, usize), SyntaxError> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let binder = std::mem::take(&mut self.after_backslash);
        let Some(c) = self.peek() else {
            return Ok((Tok::Eof, line, col));
        };
        let tok = match c {
            '\\' | 'λ' => {
                self.bump();
                self.after_backslash = true;
                Tok::Backslash
            }
            '(' => {
                self.bump();
                Tok::LParen
            }
            ')' => {
                self.bump();
                Tok::RParen
            }
            '=' => {
                self.bump();
                Tok::Eq
            }
            ';' => {
                self.bump();
                if self.peek() != Some(';') {
                    return Err(self.err(line, col, "expected `;;`"));
                }
                self.bump();
                Tok::End
            }
            '.' => {
                self.bump();
                if self.src[self.offset()..].starts_with("type")
                    && !self.src[self.offset() + 4..]
                        .chars()
                        .next()
                        .is_some_and(ident_char)
                {
                    for _ in 0..4 {
                        self.bump();
                    }
                    Tok::TypeDummy
                } else {
                    Tok::Dot
                }
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                    s.push(d);
                    self.bump();
                }
                if self.peek().is_some_and(ident_char) {
                    return Err(self.err(line, col, "malformed number"));
                }
                Tok::Int(
                    s.parse()
                        .map_err(|_| self.err(line, col, "number too large"))?,
                )
            }
            c if ident_char(c) => {
                let mut s = String::new();
                loop {
                    match self.peek() {
                        Some(c) if ident_char(c) => {
                            s.push(c);
                            self.bump();
                        }
                        // dotted names like Trees.Exp, but never inside a binder
                        Some('.') if !binder && self.peek2().is_some_and(|c| c.is_alphabetic()) => {
                            s.push('.');
                            self.bump();
                        }
                        _ => break,
                    }
                }
                if binder {
                    Tok::Binder(s)
                } else if s == "Define" {
                    Tok::Define
                } else {
                    Tok::Ident(s)
                }
            }
            c => return Err(self.err(line, col, format!("unexpected character `{c}`"))),
        };
        Ok((tok, line, col))
    }

    fn offset(&mut self) -> usize {
        self.chars.peek().map_or(self.src.len(), |&(i, _)| i)
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, SyntaxError> {
        let mut lex = Lexer::new(src);
        let (tok, line, col) = lex.next()?;
        Ok(Parser {
            lex,
            tok,
            line,
            col,
        })
    }

    fn advance(&mut self) -> Result<Tok, SyntaxError> {
        let (tok, line, col) = self.lex.next()?;
        self.line = line;
        self.col = col;
        Ok(std::mem::replace(&mut self.tok, tok))
    }

    fn err(&self, msg: impl Into<String>) -> SyntaxError {
        SyntaxError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), SyntaxError> {
        if self.tok == t {
            self.advance()?;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn program(&mut self) -> Result<Program, SyntaxError> {
        let mut prog = Program::new();
        while self.tok != Tok::Eof {
            let (line, col) = (self.line, self.col);
            self.expect(Tok::Define, "`Define`")?;
            let name = match self.advance()? {
                Tok::Ident(n) => n,
                _ => {
                    return Err(SyntaxError {
                        line,
                        col,
                        msg: "expected a definition name".into(),
                    })
                }
            };
            let mut params = Vec::new();
            while let Tok::Ident(p) = &self.tok {
                if p.contains('.') {
                    return Err(self.err(format!("parameter `{p}` may not contain a dot")));
                }
                params.push(p.clone());
                self.advance()?;
            }
            self.expect(Tok::Eq, "`=`")?;
            let body = self.term()?;
            self.expect(Tok::End, "`;;`")?;
            let body = Term::lams(params.iter().map(String::as_str), body);
            prog.define(&name, body).map_err(|e| match e {
                ProgramError::Duplicate(n) => SyntaxError {
                    line,
                    col,
                    msg: format!("`{n}` is defined twice"),
                },
                e => SyntaxError {
                    line,
                    col,
                    msg: e.to_string(),
                },
            })?;
        }
        Ok(prog)
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let mut head: Option<Term> = None;
        loop {
            let bare_lambda = self.tok == Tok::Backslash;
            let arg = match &self.tok {
                Tok::Backslash => Some(self.lambda()?),
                Tok::LParen => {
                    self.advance()?;
                    let t = self.term()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Some(t)
                }
                Tok::Ident(_) => match self.advance()? {
                    Tok::Ident(s) if s == "callcc" => Some(Term::Callcc),
                    Tok::Ident(s) => Some(Term::var(&s)),
                    _ => unreachable!(),
                },
                Tok::Int(n) => {
                    let n = *n;
                    self.advance()?;
                    Some(nat_term(n))
                }
                Tok::TypeDummy => {
                    self.advance()?;
                    Some(Term::TypeDummy)
                }
                _ => None,
            };
            match arg {
                Some(a) => {
                    head = Some(match head {
                        None => a,
                        Some(h) => Term::app(h, a),
                    });
                    // a lambda body extends as far as possible
                    if bare_lambda {
                        break;
                    }
                }
                None => break,
            }
        }
        head.ok_or_else(|| self.err("expected a term"))
    }

    fn lambda(&mut self) -> Result<Term, SyntaxError> {
        self.advance()?;
        let x = match self.advance()? {
            Tok::Binder(x) => x,
            _ => return Err(self.err("expected a variable after `\\`")),
        };
        if self.tok == Tok::Dot {
            self.advance()?;
        }
        let body = self.term()?;
        Ok(Term::lam(&x, body))
    }
}

/// Parses a sequence of `Define` statements.
pub fn parse_program(src: &str) -> Result<Program, SyntaxError> {
    Parser::new(src)?.program()
}

/// Parses a single term; free identifiers stay variables until linking.
pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    if p.tok != Tok::Eof {
        return Err(p.err("unexpected input after term"));
    }
    Ok(t)
}
