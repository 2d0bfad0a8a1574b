//! Tokenizer and recursive-descent parser for the system DSL.
//!
//! Bare identifiers in term position come out of the parser as
//! [`Term::Var`]; [`super::system`] resolves them against the declarations
//! once the whole file has been read.

use crate::error::{Error, Result};

use super::ast::{Formula, Term};

pub const RESERVED: &[&str] = &[
    "base", "name", "negname", "of", "term", "pool", "sentence", "formula", "depth", "not", "and",
    "or", "forall", "exists", "quote", "alias", "T", "D", "TT",
];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Semi,
    Define,
    Equals,
    Arrow,
    Dot,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let at = |tok| Token {
                tok,
                line: lineno + 1,
                column,
            };
            match c {
                c if c.is_whitespace() => i += 1,
                '(' => {
                    out.push(at(Tok::LParen));
                    i += 1;
                }
                ')' => {
                    out.push(at(Tok::RParen));
                    i += 1;
                }
                ';' => {
                    out.push(at(Tok::Semi));
                    i += 1;
                }
                '.' => {
                    out.push(at(Tok::Dot));
                    i += 1;
                }
                '=' => {
                    out.push(at(Tok::Equals));
                    i += 1;
                }
                ':' if chars.get(i + 1) == Some(&'=') => {
                    out.push(at(Tok::Define));
                    i += 2;
                }
                '-' if chars.get(i + 1) == Some(&'>') => {
                    out.push(at(Tok::Arrow));
                    i += 2;
                }
                c if is_ident_char(c) => {
                    let start = i;
                    while i < chars.len() && is_ident_char(chars[i]) {
                        i += 1;
                    }
                    out.push(at(Tok::Ident(chars[start..i].iter().collect())));
                }
                other => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
    }
    Ok(out)
}

/// One top-level statement, before name resolution.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Statement {
    Base(Vec<String>),
    Name(String, Formula),
    NegName {
        name: String,
        of: String,
        body: Formula,
    },
    Alias(String, Term),
    PoolSentence(Formula),
    PoolTerm(Term),
    PoolFormula(String, Formula),
    Depth(usize),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(toks: Vec<Token>, text: &str) -> Self {
        let lines = text.lines().count().max(1);
        let last = text.lines().last().map(|l| l.len() + 1).unwrap_or(1);
        Parser {
            toks,
            pos: 0,
            end: (lines, last),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end);
        Err(Error::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        if self.is_keyword(kw) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected `{kw}`"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !RESERVED.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected {what}")),
        }
    }

    fn statement(&mut self) -> Result<Statement> {
        let Some(Tok::Ident(head)) = self.peek().cloned() else {
            return self.error("expected a statement");
        };
        self.pos += 1;
        let stmt = match head.as_str() {
            "base" => {
                let mut ids = vec![self.ident("base element")?];
                while let Some(Tok::Ident(_)) = self.peek() {
                    ids.push(self.ident("base element")?);
                }
                Statement::Base(ids)
            }
            "name" => {
                let id = self.ident("name")?;
                self.expect(Tok::Define, "`:=`")?;
                Statement::Name(id, self.formula()?)
            }
            "negname" => {
                let name = self.ident("name")?;
                self.keyword("of")?;
                let of = self.ident("name")?;
                self.expect(Tok::Define, "`:=`")?;
                Statement::NegName {
                    name,
                    of,
                    body: self.formula()?,
                }
            }
            "term" => {
                let id = self.ident("alias")?;
                self.expect(Tok::Define, "`:=`")?;
                Statement::Alias(id, self.term()?)
            }
            "pool" => {
                if self.is_keyword("sentence") {
                    self.pos += 1;
                    Statement::PoolSentence(self.formula()?)
                } else if self.is_keyword("term") {
                    self.pos += 1;
                    Statement::PoolTerm(self.term()?)
                } else if self.is_keyword("formula") {
                    self.pos += 1;
                    let var = self.ident("variable")?;
                    self.expect(Tok::Dot, "`.`")?;
                    Statement::PoolFormula(var, self.formula()?)
                } else {
                    return self.error("expected `sentence`, `term` or `formula`");
                }
            }
            "depth" => {
                let n = match self.peek() {
                    Some(Tok::Ident(s)) => s.parse::<usize>().ok(),
                    _ => None,
                };
                match n {
                    Some(n) => {
                        self.pos += 1;
                        Statement::Depth(n)
                    }
                    None => return self.error("expected a depth"),
                }
            }
            other => {
                self.pos -= 1;
                return self.error(format!("unknown statement `{other}`"));
            }
        };
        self.expect(Tok::Semi, "`;`")?;
        Ok(stmt)
    }

    pub(crate) fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.is_keyword("or") {
            self.pos += 1;
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.is_keyword("and") {
            self.pos += 1;
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.is_keyword("not") {
            self.pos += 1;
            return Ok(Formula::not(self.unary()?));
        }
        if self.is_keyword("forall") || self.is_keyword("exists") {
            let universal = self.is_keyword("forall");
            self.pos += 1;
            let v = self.ident("variable")?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.formula()?;
            return Ok(if universal {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let f = self.formula()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(f);
        }
        for (kw, make) in [
            ("T", Formula::Truth as fn(Term) -> Formula),
            ("D", Formula::Det),
            ("TT", Formula::Typed),
        ] {
            if self.is_keyword(kw) && self.peek_at(1) == Some(&Tok::LParen) {
                self.pos += 2;
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(make(t));
            }
        }
        let lhs = self.term()?;
        self.expect(Tok::Equals, "`=`")?;
        let rhs = self.term()?;
        Ok(Formula::Eq(lhs, rhs))
    }

    fn term(&mut self) -> Result<Term> {
        if self.is_keyword("quote") {
            self.pos += 1;
            self.expect(Tok::LParen, "`(`")?;
            let f = self.formula()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Term::quote(f));
        }
        if self.is_keyword("name") {
            self.pos += 1;
            return Ok(Term::Name(self.ident("name")?));
        }
        if self.is_keyword("alias") {
            self.pos += 1;
            return Ok(Term::Alias(self.ident("alias")?));
        }
        if self.is_keyword("base") {
            self.pos += 1;
            return Ok(Term::Base(self.ident("base element")?));
        }
        Ok(Term::Var(self.ident("term")?))
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }
}

pub(crate) fn parse_statements(text: &str) -> Result<Vec<Statement>> {
    let mut p = Parser::new(tokenize(text)?, text);
    let mut out = Vec::new();
    while !p.at_end() {
        out.push(p.statement()?);
    }
    Ok(out)
}

/// Parses a lone formula; bare identifiers stay unresolved.
pub(crate) fn parse_raw_formula(text: &str) -> Result<Formula> {
    let mut p = Parser::new(tokenize(text)?, text);
    let f = p.formula()?;
    if !p.at_end() {
        return p.error("trailing input after formula");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn liar_statement() {
        let s = parse_statements("name L := not T(L);").unwrap();
        assert_eq!(
            s,
            vec![Statement::Name(
                "L".into(),
                Formula::not(Formula::truth(Term::var("L")))
            )]
        );
    }

    #[test]
    fn precedence_and_associativity() {
        let f = parse_raw_formula("a = b or c = d and not e = f -> g = h -> i = j").unwrap();
        let eq = |x: &str, y: &str| Formula::eq(Term::var(x), Term::var(y));
        let expected = Formula::imp(
            Formula::or(eq("a", "b"), Formula::and(eq("c", "d"), Formula::not(eq("e", "f")))),
            Formula::imp(eq("g", "h"), eq("i", "j")),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn error_has_position() {
        let err = parse_statements("base 0 1;\nname L := not T(L)").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_statements("base 0;\nname L := T(L) $;").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 16, .. }), "{err:?}");
    }

    #[test]
    fn comments_are_skipped() {
        let s = parse_statements("# header\nbase 0 1; # two elements\n").unwrap();
        assert_eq!(s, vec![Statement::Base(vec!["0".into(), "1".into()])]);
    }
}
