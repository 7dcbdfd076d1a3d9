//! Text format for programs.
//!
//! ```text
//! % comment
//! p ; q :- a, not b, X < 3.
//! -flies(X) :- penguin(X).
//! :- p, q.
//! #abducible broken_wing(X).
//! #variable manager(X).
//! ```

use crate::error::{Error, Result};
use crate::syntax::{
    Atom, BodyElement, Comparison, Literal, Program, Relation, Rule, Term, RESERVED_PREFIX,
};

/// A parsed file: the program plus the rules named by directives.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceUnit {
    pub program: Program,
    /// Rules declared with `#abducible`.
    pub abducibles: Program,
    /// Rules declared with `#variable`.
    pub variables: Program,
}

pub fn parse(text: &str) -> Result<SourceUnit> {
    let mut p = Parser::new(text)?;
    let mut unit = SourceUnit::default();
    while !p.at_end() {
        match p.peek().kind.clone() {
            Tok::Directive(name) => {
                p.bump();
                let rule = p.rule()?;
                match name.as_str() {
                    "abducible" => unit.abducibles.insert(rule),
                    "variable" => unit.variables.insert(rule),
                    _ => unreachable!("lexer only emits known directives"),
                };
            }
            _ => {
                let rule = p.rule()?;
                unit.program.insert(rule);
            }
        }
    }
    Ok(unit)
}

/// Parses a single rule such as `p :- q.` (the final period is optional).
pub fn parse_rule(text: &str) -> Result<Rule> {
    let text = text.trim();
    let owned;
    let text = if text.ends_with('.') {
        text
    } else {
        owned = format!("{text}.");
        &owned
    };
    let mut p = Parser::new(text)?;
    let rule = p.rule()?;
    p.expect_end()?;
    Ok(rule)
}

/// Parses a literal such as `-flies(tweety)`.
pub fn parse_literal(text: &str) -> Result<Literal> {
    let mut p = Parser::new(text.trim().trim_end_matches('.'))?;
    let lit = p.literal()?;
    p.expect_end()?;
    Ok(lit)
}

/// Renders a unit so that [`parse`] gives it back: program rules first, then
/// the directives, each group in sorted order.
pub fn render(unit: &SourceUnit) -> String {
    let mut out = String::new();
    for r in &unit.program {
        out.push_str(&format!("{r}\n"));
    }
    for r in &unit.abducibles {
        out.push_str(&format!("#abducible {r}\n"));
    }
    for r in &unit.variables {
        out.push_str(&format!("#variable {r}\n"));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(i64),
    Directive(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Dot,
    If,
    Minus,
    Rel(Relation),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Var(s) => format!("`{s}`"),
            Tok::Int(i) => format!("`{i}`"),
            Tok::Directive(d) => format!("`#{d}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Dot => "`.`".into(),
            Tok::If => "`:-`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Rel(r) => format!("`{}`", r.symbol()),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let syntax = |line, column, message: String| Error::Syntax {
        line,
        column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut push = |kind, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Token {
                kind,
                line: tl,
                column: tc,
            });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            '=' => push(Tok::Rel(Relation::Eq), 1, &mut i, &mut col),
            ':' if chars.get(i + 1) == Some(&'-') => push(Tok::If, 2, &mut i, &mut col),
            '!' if chars.get(i + 1) == Some(&'=') => push(Tok::Rel(Relation::Ne), 2, &mut i, &mut col),
            '<' if chars.get(i + 1) == Some(&'=') => push(Tok::Rel(Relation::Le), 2, &mut i, &mut col),
            '>' if chars.get(i + 1) == Some(&'=') => push(Tok::Rel(Relation::Ge), 2, &mut i, &mut col),
            '<' => push(Tok::Rel(Relation::Lt), 1, &mut i, &mut col),
            '>' => push(Tok::Rel(Relation::Gt), 1, &mut i, &mut col),
            '#' => {
                let word: String = chars[i + 1..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .collect();
                if word != "abducible" && word != "variable" {
                    return Err(syntax(
                        tl,
                        tc,
                        format!("unknown directive `#{word}`, expected `#abducible` or `#variable`"),
                    ));
                }
                let len = word.len() + 1;
                push(Tok::Directive(word), len, &mut i, &mut col);
            }
            c if c.is_ascii_digit() => {
                let digits: String = chars[i..].iter().take_while(|c| c.is_ascii_digit()).collect();
                let value = digits
                    .parse::<i64>()
                    .map_err(|_| syntax(tl, tc, format!("integer `{digits}` out of range")))?;
                let len = digits.len();
                push(Tok::Int(value), len, &mut i, &mut col);
            }
            c if c.is_alphabetic() || c == '_' => {
                let word: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_alphanumeric() || **c == '_' || **c == '\'')
                    .collect();
                if word.starts_with(RESERVED_PREFIX) {
                    return Err(Error::ReservedName {
                        line: tl,
                        column: tc,
                        name: word,
                    });
                }
                let len = word.chars().count();
                let kind = if c.is_uppercase() {
                    Tok::Var(word)
                } else {
                    Tok::Ident(word)
                };
                push(kind, len, &mut i, &mut col);
            }
            other => return Err(syntax(tl, tc, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Token {
        kind: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            tokens: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].kind
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn at_end(&self) -> bool {
        self.peek().kind == Tok::Eof
    }

    fn error(&self, expected: &str) -> Error {
        let t = self.peek();
        Error::Syntax {
            line: t.line,
            column: t.column,
            message: format!("expected {expected}, found {}", t.kind.describe()),
        }
    }

    fn expect(&mut self, kind: Tok, expected: &str) -> Result<()> {
        if self.peek().kind == kind {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    fn rule(&mut self) -> Result<Rule> {
        let mut head = Vec::new();
        if self.peek().kind != Tok::If {
            head.push(self.literal()?);
            while self.peek().kind == Tok::Semi {
                self.bump();
                head.push(self.literal()?);
            }
        }
        let mut body = Vec::new();
        if self.peek().kind == Tok::If {
            self.bump();
            body.push(self.body_element()?);
            while self.peek().kind == Tok::Comma {
                self.bump();
                body.push(self.body_element()?);
            }
        } else if head.is_empty() {
            return Err(self.error("a literal or `:-`"));
        }
        let expected = if body.is_empty() { "`;`, `:-` or `.`" } else { "`,` or `.`" };
        self.expect(Tok::Dot, expected)?;
        Ok(Rule::new(head, body))
    }

    fn body_element(&mut self) -> Result<BodyElement> {
        match (self.peek().kind.clone(), self.peek_at(1).clone()) {
            (Tok::Ident(w), next) if w == "not" && matches!(next, Tok::Ident(_) | Tok::Minus) => {
                self.bump();
                Ok(BodyElement::Naf(self.literal()?))
            }
            (Tok::Var(_) | Tok::Int(_), _) | (Tok::Minus, Tok::Int(_)) | (Tok::Ident(_), Tok::Rel(_)) => {
                let lhs = self.term()?;
                let relation = match self.peek().kind {
                    Tok::Rel(r) => r,
                    _ => return Err(self.error("a comparison operator")),
                };
                self.bump();
                let rhs = self.term()?;
                Ok(BodyElement::Builtin(Comparison::new(relation, lhs, rhs)))
            }
            _ => Ok(BodyElement::Pos(self.literal()?)),
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        let negated = if self.peek().kind == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let predicate = match self.peek().kind.clone() {
            Tok::Ident(name) => {
                self.bump();
                name
            }
            _ => return Err(self.error("a predicate name")),
        };
        let mut args = Vec::new();
        if self.peek().kind == Tok::LParen {
            self.bump();
            args.push(self.term()?);
            while self.peek().kind == Tok::Comma {
                self.bump();
                args.push(self.term()?);
            }
            self.expect(Tok::RParen, "`,` or `)`")?;
        }
        Ok(Literal {
            negated,
            atom: Atom::new(predicate, args),
        })
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek().kind.clone() {
            Tok::Ident(c) => {
                self.bump();
                Ok(Term::Const(c))
            }
            Tok::Var(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Int(i) => {
                self.bump();
                Ok(Term::Int(i))
            }
            Tok::Minus => {
                if let Tok::Int(i) = *self.peek_at(1) {
                    self.bump();
                    self.bump();
                    Ok(Term::Int(-i))
                } else {
                    self.bump();
                    Err(self.error("an integer after `-`"))
                }
            }
            _ => Err(self.error("a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(src: &str) -> Rule {
        parse_rule(src).unwrap()
    }

    #[test]
    fn empty_body_is_rejected() {
        assert!(matches!(parse("p :- ."), Err(Error::Syntax { .. })));
        assert!(matches!(parse(":- ."), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rule_with_naf_body() {
        let r = one("q :- a, not b.");
        assert_eq!(r.head.len(), 1);
        assert_eq!(r.positive_body().count(), 1);
        assert_eq!(r.naf_body().next(), Some(&Literal::prop("b")));
    }

    #[test]
    fn strong_negation_in_head() {
        let r = one("-flies(X) :- penguin(X).");
        let h = r.head.iter().next().unwrap();
        assert!(h.negated);
        assert_eq!(h.atom.predicate, "flies");
    }

    #[test]
    fn disjunctive_head() {
        let r = one("p ; q :- a.");
        assert_eq!(r.head.len(), 2);
    }

    #[test]
    fn comparisons_and_integers() {
        let r = one("ok(X) :- age(X, Y), Y < 40, 3 >= -2, X != tom.");
        assert_eq!(r.body.iter().filter(|b| matches!(b, BodyElement::Builtin(_))).count(), 3);
    }

    #[test]
    fn constraint_renders_back() {
        let r = one(":- p, q.");
        assert!(r.is_constraint());
        assert_eq!(r.to_string(), ":- p, q.");
    }

    #[test]
    fn directives_fill_registries() {
        let u = parse("a.\n#abducible a.\n#abducible b.\r\n#variable p(X).\n").unwrap();
        assert_eq!(u.program.len(), 1);
        assert_eq!(u.abducibles.len(), 2);
        assert_eq!(u.variables.len(), 1);
    }

    #[test]
    fn round_trip() {
        let src = "p :- b.\nq :- a, not b.\na.\n#abducible a.\n#abducible b.\n";
        let u = parse(src).unwrap();
        assert_eq!(parse(&render(&u)).unwrap(), u);
        assert_eq!(render(&SourceUnit::default()), "");
    }

    #[test]
    fn errors_carry_positions() {
        match parse("p :- q\nr.") {
            Err(Error::Syntax { line, column, message }) => {
                assert_eq!((line, column), (2, 1));
                assert!(message.contains("expected"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse("p :- __q."),
            Err(Error::ReservedName { line: 1, column: 6, .. })
        ));
        assert!(matches!(parse("p :- q"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("#include x."), Err(Error::Syntax { .. })));
    }

    #[test]
    fn comments_are_skipped() {
        let u = parse("% nothing here\np. % trailing\n").unwrap();
        assert_eq!(u.program.len(), 1);
    }

    #[test]
    fn single_literals() {
        assert_eq!(
            parse_literal("-flies(tweety)").unwrap(),
            Literal::neg(Atom::new("flies", vec![Term::constant("tweety")]))
        );
        assert!(parse_literal("p q").is_err());
    }
}
