//! Recursive-descent parser for theory files.
//!
//! Connective precedence, loosest first: `<->`, `->` (right associative),
//! `\/`, `/\`, `~`.

use super::{
    AxiomSchema, ErrorKind, Formula, PAtom, PTerm, ParseError, Signature, SymbolRef, TheorySpec,
};
use crate::logic::{Atom, Name, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Comma,
    Semi,
    Colon,
    Dot,
    LParen,
    RParen,
    Slash,
    Tilde,
    And,
    Or,
    Implies,
    Iff,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let err = |msg: String| ParseError {
            line: l0,
            col: c0,
            kind: ErrorKind::Syntax(msg),
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let two: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let (tok, len) = if two.starts_with("<->") {
            (Tok::Iff, 3)
        } else if two.starts_with("->") {
            (Tok::Implies, 2)
        } else if two.starts_with("/\\") {
            (Tok::And, 2)
        } else if two.starts_with("\\/") {
            (Tok::Or, 2)
        } else {
            match c {
                ',' => (Tok::Comma, 1),
                ';' => (Tok::Semi, 1),
                ':' => (Tok::Colon, 1),
                '.' => (Tok::Dot, 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '/' => (Tok::Slash, 1),
                '~' => (Tok::Tilde, 1),
                c if c.is_ascii_digit() => {
                    let start = i;
                    let mut j = i;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    let s: String = chars[start..j].iter().collect();
                    let n = s
                        .parse::<u64>()
                        .map_err(|_| err(format!("integer `{s}` is too large")))?;
                    (Tok::Int(n), j - start)
                }
                c if c.is_alphabetic() || c == '_' => {
                    let start = i;
                    let mut j = i;
                    while j < chars.len()
                        && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                    {
                        j += 1;
                    }
                    (Tok::Ident(chars[start..j].iter().collect()), j - start)
                }
                c => return Err(err(format!("unexpected character `{c}`"))),
            }
        };
        out.push(Spanned {
            tok,
            line: l0,
            col: c0,
        });
        i += len;
        col += len;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'s mut Signature,
}

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn error_at(&self, at: (usize, usize), kind: ErrorKind) -> ParseError {
        ParseError {
            line: at.0,
            col: at.1,
            kind,
        }
    }

    fn error(&self, kind: ErrorKind) -> ParseError {
        self.error_at(self.here(), kind)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(ErrorKind::Syntax(format!(
            "expected {wanted}, found {}",
            self.peek().describe()
        )))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.describe()))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        match *self.peek() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn theory(mut self) -> Result<Vec<AxiomSchema>, ParseError> {
        let mut axioms: Vec<AxiomSchema> = Vec::new();
        loop {
            let at = self.here();
            let kw = match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(s) => s,
                _ => return Err(self.unexpected("a declaration")),
            };
            self.bump();
            match kw.as_str() {
                "const" => loop {
                    let at = self.here();
                    let name = self.ident()?;
                    self.sig
                        .add_const(&name)
                        .map_err(|k| self.error_at(at, k))?;
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                },
                "fun" | "pred" => loop {
                    let at = self.here();
                    let name = self.ident()?;
                    let arity = if self.eat(&Tok::Slash) {
                        self.int()? as usize
                    } else {
                        0
                    };
                    let res = if kw == "fun" {
                        self.sig.add_fun(&name, arity)
                    } else {
                        self.sig.add_pred(&name, arity)
                    };
                    res.map_err(|k| self.error_at(at, k))?;
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                },
                "option" => {
                    let at = self.here();
                    match self.ident()?.as_str() {
                        "numerals" => self.sig.enable_numerals(),
                        other => {
                            return Err(self.error_at(
                                at,
                                ErrorKind::Syntax(format!("unknown option `{other}`")),
                            ))
                        }
                    }
                }
                "axiom" => {
                    let ax = self.axiom()?;
                    if axioms.iter().any(|a| a.name == ax.name) {
                        return Err(self.error_at(at, ErrorKind::Duplicate(ax.name.to_string())));
                    }
                    if !ax.vars.is_empty() && !self.sig.has_terms() {
                        return Err(
                            self.error_at(at, ErrorKind::EmptyUniverse(ax.name.to_string()))
                        );
                    }
                    axioms.push(ax);
                }
                other => {
                    return Err(self.error_at(
                        at,
                        ErrorKind::Syntax(format!(
                            "expected `const`, `fun`, `pred`, `option` or `axiom`, found `{other}`"
                        )),
                    ))
                }
            }
            self.expect(&Tok::Semi)?;
        }
        Ok(axioms)
    }

    fn axiom(&mut self) -> Result<AxiomSchema, ParseError> {
        let name = self.ident()?;
        self.expect(&Tok::Colon)?;
        let mut vars: Vec<Name> = Vec::new();
        if self.peek() == &Tok::Ident("forall".into()) {
            self.bump();
            while let Tok::Ident(v) = self.peek().clone() {
                let at = self.here();
                if self.sig.lookup(&v).is_some() || vars.iter().any(|x| **x == *v) {
                    return Err(self.error_at(at, ErrorKind::Duplicate(v)));
                }
                self.bump();
                vars.push(v.as_str().into());
            }
            if vars.is_empty() {
                return Err(self.unexpected("a variable"));
            }
            self.expect(&Tok::Dot)?;
        }
        let body = self.formula(&vars)?;
        Ok(AxiomSchema {
            name: name.as_str().into(),
            vars,
            body,
        })
    }

    fn formula(&mut self, vars: &[Name]) -> Result<Formula, ParseError> {
        let lhs = self.implication(vars)?;
        if self.eat(&Tok::Iff) {
            let rhs = self.formula(vars)?;
            // a <-> b  ==>  (~a \/ b) /\ (a \/ ~b)
            return Ok(Formula::and(
                Formula::or(Formula::not(lhs.clone()), rhs.clone()),
                Formula::or(lhs, Formula::not(rhs)),
            ));
        }
        Ok(lhs)
    }

    fn implication(&mut self, vars: &[Name]) -> Result<Formula, ParseError> {
        let lhs = self.disjunction(vars)?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication(vars)?;
            return Ok(Formula::or(Formula::not(lhs), rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self, vars: &[Name]) -> Result<Formula, ParseError> {
        let mut f = self.conjunction(vars)?;
        while self.eat(&Tok::Or) {
            f = Formula::or(f, self.conjunction(vars)?);
        }
        Ok(f)
    }

    fn conjunction(&mut self, vars: &[Name]) -> Result<Formula, ParseError> {
        let mut f = self.unary(vars)?;
        while self.eat(&Tok::And) {
            f = Formula::and(f, self.unary(vars)?);
        }
        Ok(f)
    }

    fn unary(&mut self, vars: &[Name]) -> Result<Formula, ParseError> {
        if self.eat(&Tok::Tilde) {
            return Ok(Formula::not(self.unary(vars)?));
        }
        if self.eat(&Tok::LParen) {
            let f = self.formula(vars)?;
            self.expect(&Tok::RParen)?;
            return Ok(f);
        }
        self.atom(vars).map(Formula::Atom)
    }

    fn atom(&mut self, vars: &[Name]) -> Result<PAtom, ParseError> {
        let at = self.here();
        let name = self.ident()?;
        let pred = match self.sig.lookup(&name) {
            Some(SymbolRef::Pred(id)) => id,
            _ => return Err(self.error_at(at, ErrorKind::UnknownSymbol(name))),
        };
        let args = self.arguments(vars)?;
        let expected = self.sig.preds()[pred].arity;
        if args.len() != expected {
            return Err(self.error_at(
                at,
                ErrorKind::ArityMismatch {
                    name,
                    expected,
                    found: args.len(),
                },
            ));
        }
        Ok(PAtom { pred, args })
    }

    fn arguments(&mut self, vars: &[Name]) -> Result<Vec<PTerm>, ParseError> {
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.term(vars)?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::RParen)?;
        }
        Ok(args)
    }

    fn term(&mut self, vars: &[Name]) -> Result<PTerm, ParseError> {
        let at = self.here();
        if let Tok::Int(n) = *self.peek() {
            self.bump();
            if !self.sig.numerals() {
                return Err(self.error_at(at, ErrorKind::NumeralsDisabled));
            }
            return Ok(PTerm::Num(n));
        }
        let name = self.ident()?;
        let applied = self.peek() == &Tok::LParen;
        if !applied {
            if let Some(v) = vars.iter().position(|x| **x == *name) {
                return Ok(PTerm::Var(v));
            }
        }
        match self.sig.lookup(&name) {
            Some(SymbolRef::Fun(id)) => {
                let args = self.arguments(vars)?;
                let expected = self.sig.funs()[id].arity;
                if args.len() != expected {
                    return Err(self.error_at(
                        at,
                        ErrorKind::ArityMismatch {
                            name,
                            expected,
                            found: args.len(),
                        },
                    ));
                }
                Ok(PTerm::Fn(id, args))
            }
            Some(SymbolRef::Pred(_)) => Err(self.error_at(
                at,
                ErrorKind::Syntax(format!("predicate `{name}` used as a term")),
            )),
            None if applied => Err(self.error_at(at, ErrorKind::UnknownSymbol(name))),
            None => Err(self.error_at(at, ErrorKind::UnboundVariable(name))),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

/// Parses a theory file.
pub fn parse_theory(src: &str) -> Result<TheorySpec, ParseError> {
    let mut signature = Signature::new();
    let parser = Parser {
        toks: lex(src)?,
        pos: 0,
        sig: &mut signature,
    };
    let axioms = parser.theory()?;
    Ok(TheorySpec { signature, axioms })
}

fn ground_pterm(sig: &Signature, t: &PTerm) -> Term {
    match t {
        PTerm::Var(_) => unreachable!("ground parse binds no variables"),
        PTerm::Num(n) => Term::Num(*n),
        PTerm::Fn(id, args) => Term::Fn(
            sig.funs()[*id].name.clone(),
            args.iter().map(|a| ground_pterm(sig, a)).collect(),
        ),
    }
}

/// Parses a ground term such as `f(a)` against a signature.
pub(crate) fn parse_ground_term(sig: &Signature, src: &str) -> Result<Term, ParseError> {
    let mut sig = sig.clone();
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        sig: &mut sig,
    };
    let t = p.term(&[])?;
    p.finish()?;
    Ok(ground_pterm(p.sig, &t))
}

/// Parses a ground atom such as `Crow(42)` against a signature.
pub(crate) fn parse_ground_atom(sig: &Signature, src: &str) -> Result<Atom, ParseError> {
    let mut sig = sig.clone();
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        sig: &mut sig,
    };
    let a = p.atom(&[])?;
    p.finish()?;
    let args = a.args.iter().map(|t| ground_pterm(p.sig, t)).collect();
    Ok(Atom::new(&p.sig.preds()[a.pred].name, args))
}

#[cfg(test)]
mod tests {
    use super::*;

    const WHITE_CROW: &str = "option numerals;
pred Crow/1, Black/1, White/1;
axiom crow_black: forall n. ~Crow(n) \\/ Black(n);
axiom not_bw:     forall n. ~(Black(n) /\\ White(n));
axiom crow42:     Crow(42);
axiom white42:    White(42);
";

    #[test]
    fn parses_white_crow() {
        let spec = parse_theory(WHITE_CROW).unwrap();
        assert_eq!(spec.signature.preds().len(), 3);
        assert_eq!(spec.axioms.len(), 4);
        assert!(spec.signature.numerals());
        let (_, cb) = spec.axiom("crow_black").unwrap();
        assert_eq!(cb.vars.len(), 1);
        assert_eq!(
            cb.body,
            Formula::or(
                Formula::not(Formula::Atom(PAtom {
                    pred: 0,
                    args: vec![PTerm::Var(0)]
                })),
                Formula::Atom(PAtom {
                    pred: 1,
                    args: vec![PTerm::Var(0)]
                })
            )
        );
    }

    #[test]
    fn parses_pseudo_induction() {
        let spec = parse_theory(
            "const a; fun f/1; pred P/1;
             axiom step: forall x. P(x) -> P(f(x));
             axiom base: P(a);
             axiom neg: ~P(f(f(a)));",
        )
        .unwrap();
        assert_eq!(spec.signature.funs().len(), 2);
        assert_eq!(spec.signature.funs()[0].arity, 0);
        assert_eq!(spec.signature.funs()[1].arity, 1);
        assert_eq!(spec.signature.preds().len(), 1);
        assert_eq!(spec.axioms.len(), 3);
        let (_, step) = spec.axiom("step").unwrap();
        assert_eq!(spec.show_formula(step, &step.body), "(~P(x) \\/ P(f(x)))");
    }

    #[test]
    fn unbound_variable_is_reported_with_location() {
        let err = parse_theory("pred P/1;\naxiom bad: P(x);").unwrap_err();
        assert_eq!(err.kind, ErrorKind::UnboundVariable("x".into()));
        assert_eq!((err.line, err.col), (2, 14));
    }

    #[test]
    fn reports_unknown_symbols_and_arity() {
        let err = parse_theory("pred P/1; axiom a: Q(1);").unwrap_err();
        assert_eq!(err.kind, ErrorKind::UnknownSymbol("Q".into()));
        let err = parse_theory("const c; pred P/1; axiom a: P(c, c);").unwrap_err();
        assert!(matches!(
            err.kind,
            ErrorKind::ArityMismatch {
                expected: 1,
                found: 2,
                ..
            }
        ));
        let err = parse_theory("const c; fun f/1; pred P/1; axiom a: P(f);").unwrap_err();
        assert!(matches!(
            err.kind,
            ErrorKind::ArityMismatch {
                expected: 1,
                found: 0,
                ..
            }
        ));
        let err = parse_theory("pred P/1; axiom a: P(3);").unwrap_err();
        assert_eq!(err.kind, ErrorKind::NumeralsDisabled);
        let err = parse_theory("const c; pred c/0;").unwrap_err();
        assert_eq!(err.kind, ErrorKind::Duplicate("c".into()));
    }

    #[test]
    fn syntax_errors() {
        let err = parse_theory("pred P/0; axiom a: P /\\;").unwrap_err();
        assert!(matches!(err.kind, ErrorKind::Syntax(_)));
        let err = parse_theory("pred P/0 axiom a: P;").unwrap_err();
        assert!(matches!(err.kind, ErrorKind::Syntax(_)));
        let err = parse_theory("pred P/0; axiom a: P $;").unwrap_err();
        assert!(matches!(err.kind, ErrorKind::Syntax(_)));
    }

    #[test]
    fn desugars_connectives() {
        let spec = parse_theory("pred A, B, C; axiom x: A -> B -> C; axiom y: A <-> B;").unwrap();
        let (_, x) = spec.axiom("x").unwrap();
        assert_eq!(spec.show_formula(x, &x.body), "(~A \\/ (~B \\/ C))");
        let (_, y) = spec.axiom("y").unwrap();
        assert_eq!(spec.show_formula(y, &y.body), "((~A \\/ B) /\\ (A \\/ ~B))");
    }

    #[test]
    fn precedence_and_comments() {
        let spec =
            parse_theory("# header\npred A, B, C; # trailing\naxiom x: ~A /\\ B \\/ C;").unwrap();
        let (_, x) = spec.axiom("x").unwrap();
        assert_eq!(spec.show_formula(x, &x.body), "((~A /\\ B) \\/ C)");
    }

    #[test]
    fn empty_universe_rejected_for_quantified_axioms() {
        let err = parse_theory("pred P/1; axiom a: forall x. P(x);").unwrap_err();
        assert_eq!(err.kind, ErrorKind::EmptyUniverse("a".into()));
        // parameterless axioms need no terms
        parse_theory("pred P; axiom a: P;").unwrap();
    }

    #[test]
    fn ground_atoms_and_terms() {
        let spec = parse_theory("const a; fun f/1; pred P/1;").unwrap();
        let t = parse_ground_term(&spec.signature, "f(f(a))").unwrap();
        assert_eq!(t.to_string(), "f(f(a))");
        let a = parse_ground_atom(&spec.signature, "P(f(a))").unwrap();
        assert_eq!(a.to_string(), "P(f(a))");
        assert!(parse_ground_atom(&spec.signature, "P(x)").is_err());
        assert!(parse_ground_atom(&spec.signature, "P(a) junk").is_err());
    }
}
