//! Parser for the `.folkb` knowledge-base format.
//!
//! A document is a sequence of sections:
//!
//! ```text
//! % comment to end of line
//! #predicates A/1, B/1, R/1.   % optional: pins the rule vocabulary exactly
//! #constants a, b.             % required, nonempty: the finite domain
//! #omega A, B.                 % optional: predicates shared with the theory
//! #theory                      % zero or more closed formulas, one per '.'
//! forall X. (B(X) -> A(X)).
//! ~A(a) | C(a).
//! #rules                       % zero or more rules
//! R(a) :- not C(a), not A(a).
//! ```
//!
//! Constants are lowercase identifiers, variables uppercase. Formula
//! connectives: `~`, `&`, `|`, `->`, `<->`, `forall X.`, `exists X.`
//! (quantifiers scope as far right as possible). Rule bodies separate
//! elements with commas; compound formulas in bodies must be parenthesized;
//! `not` marks negation as failure. Heads are plain atoms.
//!
//! When `#predicates` is omitted, the rule vocabulary defaults to the head
//! predicates plus `#omega`. Predicates used but not in the rule vocabulary
//! are open-world theory predicates: they never enter the Herbrand base.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{Atom, Formula, KnowledgeBase, LiteralSet, Signature, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Span {
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(usize),
    Directive(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Slash,
    ColonDash,
    Tilde,
    Amp,
    Pipe,
    Arrow,
    BiArrow,
    Not,
    Forall,
    Exists,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("`{n}`"),
            Tok::Directive(s) => format!("`#{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Slash => "`/`".into(),
            Tok::ColonDash => "`:-`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::BiArrow => "`<->`".into(),
            Tok::Not => "`not`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Exists => "`exists`".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn lex(mut self) -> Result<Vec<(Tok, Span)>> {
        let mut out = Vec::new();
        loop {
            // Skip whitespace and comments.
            match self.chars.peek() {
                None => break,
                Some(c) if c.is_whitespace() => {
                    self.bump();
                    continue;
                }
                Some('%') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                    continue;
                }
                _ => {}
            }
            let span = Span {
                line: self.line,
                col: self.col,
            };
            let c = self.bump().expect("peeked");
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '/' => Tok::Slash,
                '~' => Tok::Tilde,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                ':' => match self.chars.peek() {
                    Some('-') => {
                        self.bump();
                        Tok::ColonDash
                    }
                    _ => return Err(Error::parse(span.line, span.col, "expected `:-`")),
                },
                '-' => match self.chars.peek() {
                    Some('>') => {
                        self.bump();
                        Tok::Arrow
                    }
                    _ => return Err(Error::parse(span.line, span.col, "expected `->`")),
                },
                '<' => {
                    if self.bump() == Some('-') && self.bump() == Some('>') {
                        Tok::BiArrow
                    } else {
                        return Err(Error::parse(span.line, span.col, "expected `<->`"));
                    }
                }
                '#' => {
                    let mut name = String::new();
                    while let Some(c) = self.chars.peek() {
                        if c.is_ascii_alphanumeric() || *c == '_' {
                            name.push(self.bump().expect("peeked"));
                        } else {
                            break;
                        }
                    }
                    if name.is_empty() {
                        return Err(Error::parse(
                            span.line,
                            span.col,
                            "expected a section name after `#`",
                        ));
                    }
                    Tok::Directive(name)
                }
                c if c.is_ascii_alphabetic() => {
                    let mut name = String::from(c);
                    while let Some(c) = self.chars.peek() {
                        if c.is_ascii_alphanumeric() || *c == '_' {
                            name.push(self.bump().expect("peeked"));
                        } else {
                            break;
                        }
                    }
                    match name.as_str() {
                        "not" => Tok::Not,
                        "forall" => Tok::Forall,
                        "exists" => Tok::Exists,
                        _ => Tok::Ident(name),
                    }
                }
                c if c.is_ascii_digit() => {
                    let mut num = String::from(c);
                    while let Some(c) = self.chars.peek() {
                        if c.is_ascii_digit() {
                            num.push(self.bump().expect("peeked"));
                        } else {
                            break;
                        }
                    }
                    let n = num.parse().map_err(|_| {
                        Error::parse(span.line, span.col, format!("number `{num}` is too large"))
                    })?;
                    Tok::Number(n)
                }
                other => {
                    return Err(Error::parse(
                        span.line,
                        span.col,
                        format!("unexpected character `{other}`"),
                    ))
                }
            };
            out.push((tok, span));
        }
        Ok(out)
    }
}

/// Arity bookkeeping: declared entries come from `#predicates`, inferred
/// ones from first use; every later use must agree.
struct Syms {
    arities: BTreeMap<String, (usize, bool)>,
}

impl Syms {
    fn use_pred(&mut self, name: &str, arity: usize, span: Span) -> Result<()> {
        match self.arities.get(name) {
            Some(&(n, _)) if n != arity => Err(Error::parse(
                span.line,
                span.col,
                format!("predicate `{name}` used with {arity} arguments, previously with {n}"),
            )),
            Some(_) => Ok(()),
            None => {
                self.arities.insert(name.to_string(), (arity, false));
                Ok(())
            }
        }
    }

    fn declare_pred(&mut self, name: &str, arity: usize, span: Span) -> Result<()> {
        match self.arities.get(name) {
            Some(&(n, _)) if n != arity => Err(Error::parse(
                span.line,
                span.col,
                format!("predicate `{name}` declared with {arity} arguments, but has arity {n}"),
            )),
            _ => {
                self.arities.insert(name.to_string(), (arity, true));
                Ok(())
            }
        }
    }
}

struct RawRule {
    head: Atom,
    pos: Vec<Formula>,
    neg: Vec<Formula>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Preamble,
    Theory,
    Rules,
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    i: usize,
    syms: Syms,
    used_constants: BTreeMap<String, Span>,
    declared_any_preds: bool,
    declared_pred_names: BTreeSet<String>,
    constants: Vec<String>,
    constants_span: Option<Span>,
    omega: Vec<(String, Span)>,
    theory: Vec<(Formula, Span)>,
    rules: Vec<(RawRule, Span)>,
}

impl Parser {
    fn new(toks: Vec<(Tok, Span)>) -> Self {
        Parser {
            toks,
            i: 0,
            syms: Syms {
                arities: BTreeMap::new(),
            },
            used_constants: BTreeMap::new(),
            declared_any_preds: false,
            declared_pred_names: BTreeSet::new(),
            constants: Vec::new(),
            constants_span: None,
            omega: Vec::new(),
            theory: Vec::new(),
            rules: Vec::new(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn here(&self) -> Span {
        self.toks
            .get(self.i)
            .or_else(|| self.toks.last())
            .map(|(_, s)| *s)
            .unwrap_or(Span { line: 1, col: 1 })
    }

    fn next(&mut self) -> Option<(Tok, Span)> {
        let t = self.toks.get(self.i).cloned();
        if t.is_some() {
            self.i += 1;
        }
        t
    }

    fn err(&self, span: Span, msg: impl Into<String>) -> Error {
        Error::parse(span.line, span.col, msg)
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        let s = self.here();
        self.err(s, msg)
    }

    fn expect(&mut self, want: &Tok) -> Result<Span> {
        match self.next() {
            Some((t, s)) if t == *want => Ok(s),
            Some((t, s)) => Err(self.err(
                s,
                format!("expected {}, found {}", want.describe(), t.describe()),
            )),
            None => Err(self.err_here(format!("expected {}, found end of input", want.describe()))),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Span)> {
        match self.next() {
            Some((Tok::Ident(s), sp)) => Ok((s, sp)),
            Some((t, sp)) => Err(self.err(sp, format!("expected {what}, found {}", t.describe()))),
            None => Err(self.err_here(format!("expected {what}, found end of input"))),
        }
    }

    fn run(mut self) -> Result<KnowledgeBase> {
        let mut mode = Mode::Preamble;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Directive(name) => {
                    let name = name.clone();
                    let (_, span) = self.next().expect("peeked");
                    match name.as_str() {
                        "predicates" => self.parse_predicates_section()?,
                        "constants" => self.parse_constants_section(span)?,
                        "omega" => self.parse_omega_section()?,
                        "theory" => mode = Mode::Theory,
                        "rules" => mode = Mode::Rules,
                        other => return Err(self.err(span, format!("unknown section `#{other}`"))),
                    }
                }
                _ => match mode {
                    Mode::Preamble => {
                        return Err(self.err_here("statement outside a #theory or #rules section"))
                    }
                    Mode::Theory => {
                        let span = self.here();
                        let f = self.parse_formula()?;
                        self.expect(&Tok::Dot)?;
                        self.theory.push((f, span));
                    }
                    Mode::Rules => {
                        let span = self.here();
                        let r = self.parse_rule()?;
                        self.rules.push((r, span));
                    }
                },
            }
        }
        self.resolve()
    }

    fn parse_predicates_section(&mut self) -> Result<()> {
        self.declared_any_preds = true;
        loop {
            let (name, span) = self.expect_ident("a predicate name")?;
            self.expect(&Tok::Slash)?;
            let arity = match self.next() {
                Some((Tok::Number(n), _)) => n,
                Some((t, sp)) => {
                    return Err(self.err(sp, format!("expected an arity, found {}", t.describe())))
                }
                None => return Err(self.err_here("expected an arity, found end of input")),
            };
            self.syms.declare_pred(&name, arity, span)?;
            self.declared_pred_names.insert(name);
            match self.next() {
                Some((Tok::Comma, _)) => continue,
                Some((Tok::Dot, _)) => return Ok(()),
                Some((t, sp)) => {
                    return Err(self.err(sp, format!("expected `,` or `.`, found {}", t.describe())))
                }
                None => return Err(self.err_here("expected `,` or `.`, found end of input")),
            }
        }
    }

    fn parse_constants_section(&mut self, span: Span) -> Result<()> {
        self.constants_span.get_or_insert(span);
        loop {
            let (name, sp) = self.expect_ident("a constant")?;
            if !name.chars().next().is_some_and(|c| c.is_ascii_lowercase()) {
                return Err(self.err(sp, format!("constant `{name}` must start lowercase")));
            }
            if !self.constants.contains(&name) {
                self.constants.push(name);
            }
            match self.next() {
                Some((Tok::Comma, _)) => continue,
                Some((Tok::Dot, _)) => return Ok(()),
                Some((t, sp)) => {
                    return Err(self.err(sp, format!("expected `,` or `.`, found {}", t.describe())))
                }
                None => return Err(self.err_here("expected `,` or `.`, found end of input")),
            }
        }
    }

    fn parse_omega_section(&mut self) -> Result<()> {
        loop {
            let (name, span) = self.expect_ident("a predicate name")?;
            self.omega.push((name, span));
            match self.next() {
                Some((Tok::Comma, _)) => continue,
                Some((Tok::Dot, _)) => return Ok(()),
                Some((t, sp)) => {
                    return Err(self.err(sp, format!("expected `,` or `.`, found {}", t.describe())))
                }
                None => return Err(self.err_here("expected `,` or `.`, found end of input")),
            }
        }
    }

    fn parse_term(&mut self) -> Result<(Term, Span)> {
        let (name, span) = self.expect_ident("a term")?;
        if name.chars().next().is_some_and(|c| c.is_ascii_uppercase()) {
            Ok((Term::Var(name), span))
        } else {
            Ok((Term::Const(name), span))
        }
    }

    fn parse_atom(&mut self) -> Result<Atom> {
        let (pred, span) = self.expect_ident("a predicate")?;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.next();
            loop {
                let (t, tspan) = self.parse_term()?;
                if let Term::Const(c) = &t {
                    self.used_constants.entry(c.clone()).or_insert(tspan);
                }
                args.push(t);
                match self.next() {
                    Some((Tok::Comma, _)) => continue,
                    Some((Tok::RParen, _)) => break,
                    Some((t, sp)) => {
                        return Err(
                            self.err(sp, format!("expected `,` or `)`, found {}", t.describe()))
                        )
                    }
                    None => return Err(self.err_here("expected `,` or `)`, found end of input")),
                }
            }
        }
        self.syms.use_pred(&pred, args.len(), span)?;
        Ok(Atom::new(pred, args))
    }

    fn parse_formula(&mut self) -> Result<Formula> {
        self.parse_iff()
    }

    fn parse_iff(&mut self) -> Result<Formula> {
        let mut f = self.parse_implies()?;
        while self.peek() == Some(&Tok::BiArrow) {
            self.next();
            let rhs = self.parse_implies()?;
            f = Formula::iff(f, rhs);
        }
        Ok(f)
    }

    fn parse_implies(&mut self) -> Result<Formula> {
        let lhs = self.parse_or()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.next();
            let rhs = self.parse_implies()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn parse_or(&mut self) -> Result<Formula> {
        let mut parts = vec![self.parse_and()?];
        while self.peek() == Some(&Tok::Pipe) {
            self.next();
            parts.push(self.parse_and()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one element")
        } else {
            Formula::Or(parts)
        })
    }

    fn parse_and(&mut self) -> Result<Formula> {
        let mut parts = vec![self.parse_unary()?];
        while self.peek() == Some(&Tok::Amp) {
            self.next();
            parts.push(self.parse_unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one element")
        } else {
            Formula::And(parts)
        })
    }

    fn parse_unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.next();
                Ok(Formula::not(self.parse_unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => {
                let (tok, _) = self.next().expect("peeked");
                let (var, vspan) = self.expect_ident("a variable")?;
                if !var.chars().next().is_some_and(|c| c.is_ascii_uppercase()) {
                    return Err(self.err(
                        vspan,
                        format!("quantified variable `{var}` must start uppercase"),
                    ));
                }
                self.expect(&Tok::Dot)?;
                let body = self.parse_formula()?;
                Ok(match tok {
                    Tok::Forall => Formula::forall(var, body),
                    _ => Formula::exists(var, body),
                })
            }
            Some(Tok::LParen) => {
                self.next();
                let f = self.parse_formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(_)) => Ok(Formula::Atom(self.parse_atom()?)),
            Some(t) => {
                let d = t.describe();
                Err(self.err_here(format!("expected a formula, found {d}")))
            }
            None => Err(self.err_here("expected a formula, found end of input")),
        }
    }

    fn parse_rule(&mut self) -> Result<RawRule> {
        if self.peek() == Some(&Tok::Tilde) {
            return Err(self.err_here("classical negation is not allowed in rule heads"));
        }
        let head = self.parse_atom()?;
        let mut rule = RawRule {
            head,
            pos: Vec::new(),
            neg: Vec::new(),
        };
        match self.next() {
            Some((Tok::Dot, _)) => Ok(rule),
            Some((Tok::ColonDash, _)) => loop {
                let negated = if self.peek() == Some(&Tok::Not) {
                    self.next();
                    true
                } else {
                    false
                };
                let f = match self.peek() {
                    Some(Tok::LParen) => {
                        self.next();
                        let f = self.parse_formula()?;
                        self.expect(&Tok::RParen)?;
                        f
                    }
                    Some(Tok::Ident(_)) => Formula::Atom(self.parse_atom()?),
                    Some(t) => {
                        let d = t.describe();
                        return Err(self.err_here(format!(
                            "expected an atom or a parenthesized formula, found {d}"
                        )));
                    }
                    None => {
                        return Err(self.err_here("expected a body element, found end of input"))
                    }
                };
                if negated {
                    rule.neg.push(f);
                } else {
                    rule.pos.push(f);
                }
                match self.next() {
                    Some((Tok::Comma, _)) => continue,
                    Some((Tok::Dot, _)) => return Ok(rule),
                    Some((t, sp)) => {
                        return Err(
                            self.err(sp, format!("expected `,` or `.`, found {}", t.describe()))
                        )
                    }
                    None => return Err(self.err_here("expected `,` or `.`, found end of input")),
                }
            },
            Some((t, sp)) => {
                Err(self.err(sp, format!("expected `:-` or `.`, found {}", t.describe())))
            }
            None => Err(self.err_here("expected `:-` or `.`, found end of input")),
        }
    }

    fn resolve(self) -> Result<KnowledgeBase> {
        let Parser {
            syms,
            used_constants,
            declared_any_preds,
            declared_pred_names,
            constants,
            constants_span,
            omega,
            theory,
            rules,
            ..
        } = self;

        if constants.is_empty() {
            let span = constants_span.unwrap_or(Span { line: 1, col: 1 });
            return Err(Error::parse(
                span.line,
                span.col,
                "the #constants section is required and must be nonempty",
            ));
        }
        let constant_set: BTreeSet<String> = constants.iter().cloned().collect();
        for (c, span) in &used_constants {
            if !constant_set.contains(c) {
                return Err(Error::parse(
                    span.line,
                    span.col,
                    format!("undeclared constant `{c}`"),
                ));
            }
        }

        // The rule vocabulary: exactly the declared predicates when a
        // #predicates section is present, otherwise heads plus omega.
        let mut rule_preds: BTreeSet<String> = if declared_any_preds {
            declared_pred_names
        } else {
            rules.iter().map(|(r, _)| r.head.pred.clone()).collect()
        };
        for (name, span) in &omega {
            if declared_any_preds && !rule_preds.contains(name) {
                return Err(Error::parse(
                    span.line,
                    span.col,
                    format!("omega predicate `{name}` is not among the declared predicates"),
                ));
            }
            if !syms.arities.contains_key(name) {
                return Err(Error::parse(
                    span.line,
                    span.col,
                    format!("cannot determine the arity of omega predicate `{name}`: it is never used and not declared"),
                ));
            }
            if !declared_any_preds {
                rule_preds.insert(name.clone());
            }
        }
        for (r, span) in &rules {
            if !rule_preds.contains(&r.head.pred) {
                return Err(Error::parse(
                    span.line,
                    span.col,
                    format!(
                        "head predicate `{}` is not among the declared predicates",
                        r.head.pred
                    ),
                ));
            }
        }

        for (f, span) in &theory {
            if let Some(v) = f.free_vars().into_iter().next() {
                return Err(Error::parse(
                    span.line,
                    span.col,
                    format!("free variable `{v}` in a theory formula"),
                ));
            }
            if let Err(e) = f.check_quantifiers(&BTreeSet::new()) {
                return Err(Error::parse(span.line, span.col, e.to_string()));
            }
        }
        for (r, span) in &rules {
            let mut vars = BTreeSet::new();
            for t in &r.head.args {
                if let Term::Var(v) = t {
                    vars.insert(v.clone());
                }
            }
            for f in r.pos.iter().chain(r.neg.iter()) {
                vars.extend(f.free_vars());
            }
            for f in r.pos.iter().chain(r.neg.iter()) {
                if let Err(e) = f.check_quantifiers(&vars) {
                    return Err(Error::parse(span.line, span.col, e.to_string()));
                }
            }
        }

        let predicates: BTreeMap<String, usize> =
            syms.arities.into_iter().map(|(k, (n, _))| (k, n)).collect();
        let omega_set: BTreeSet<String> = omega.into_iter().map(|(n, _)| n).collect();
        let signature = Signature::new(predicates, constant_set, rule_preds, omega_set)?;
        KnowledgeBase::new(
            theory.into_iter().map(|(f, _)| f).collect(),
            rules
                .into_iter()
                .map(|(r, _)| (r.head, r.pos, r.neg))
                .collect(),
            signature,
        )
    }
}

/// Parse a complete `.folkb` document into a validated knowledge base.
pub fn parse(text: &str) -> Result<KnowledgeBase> {
    Parser::new(Lexer::new(text).lex()?).run()
}

/// Parse a single closed formula against an existing signature (for query
/// interfaces). A trailing `.` is allowed.
pub fn parse_formula_str(text: &str, sig: &Signature) -> Result<Formula> {
    let mut p = Parser::new(Lexer::new(text).lex()?);
    let f = p.parse_formula()?;
    if p.peek() == Some(&Tok::Dot) {
        p.next();
    }
    if let Some(t) = p.peek() {
        let d = t.describe();
        return Err(p.err_here(format!("unexpected {d} after the formula")));
    }
    check_against_signature(&f, sig)?;
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::FreeVariable(v));
    }
    f.check_quantifiers(&BTreeSet::new())?;
    Ok(f)
}

/// Parse a comma-separated list of ground literals (`A(a), ~B(a)`) against
/// an existing signature. An empty string yields the empty set.
pub fn parse_literal_list(text: &str, sig: &Signature) -> Result<LiteralSet> {
    let toks = Lexer::new(text).lex()?;
    if toks.is_empty() {
        return Ok(LiteralSet::new());
    }
    let mut p = Parser::new(toks);
    let mut out = LiteralSet::new();
    loop {
        let negated = if p.peek() == Some(&Tok::Tilde) {
            p.next();
            true
        } else {
            false
        };
        let atom = p.parse_atom()?;
        if !atom.is_ground() {
            return Err(Error::Formula(format!("literal `{atom}` is not ground")));
        }
        check_against_signature(&Formula::Atom(atom.clone()), sig)?;
        if negated {
            out.insert_neg(atom);
        } else {
            out.insert_pos(atom);
        }
        match p.next() {
            Some((Tok::Comma, _)) => continue,
            None => return Ok(out),
            Some((t, sp)) => {
                return Err(Error::parse(
                    sp.line,
                    sp.col,
                    format!("expected `,` or end of input, found {}", t.describe()),
                ))
            }
        }
    }
}

/// Parse a ground atom by syntax alone (no signature): used when reading
/// rendered output back in.
pub fn parse_ground_atom(text: &str) -> Result<Atom> {
    let (atom, positive) = parse_ground_literal(text)?;
    if !positive {
        return Err(Error::Formula(format!(
            "expected an atom, found a negative literal `~{atom}`"
        )));
    }
    Ok(atom)
}

/// Parse a rendered literal (`A(a)` or `~A(a)`) by syntax alone.
pub fn parse_ground_literal(text: &str) -> Result<(Atom, bool)> {
    let mut p = Parser::new(Lexer::new(text).lex()?);
    let negated = if p.peek() == Some(&Tok::Tilde) {
        p.next();
        true
    } else {
        false
    };
    let atom = p.parse_atom()?;
    if let Some(t) = p.peek() {
        let d = t.describe();
        return Err(p.err_here(format!("unexpected {d} after the literal")));
    }
    if !atom.is_ground() {
        return Err(Error::Formula(format!("literal `{atom}` is not ground")));
    }
    Ok((atom, !negated))
}

fn check_against_signature(f: &Formula, sig: &Signature) -> Result<()> {
    let mut atoms = BTreeSet::new();
    f.atoms_into(&mut atoms);
    for a in atoms {
        match sig.arity(&a.pred) {
            None => return Err(Error::Signature(format!("unknown predicate `{}`", a.pred))),
            Some(n) if n != a.args.len() => {
                return Err(Error::Signature(format!(
                    "predicate `{}` used with {} arguments, declared with {}",
                    a.pred,
                    a.args.len(),
                    n
                )))
            }
            Some(_) => {}
        }
        for t in &a.args {
            if let Term::Const(c) = t {
                if !sig.constants().contains(c) {
                    return Err(Error::Signature(format!("undeclared constant `{c}`")));
                }
            }
        }
    }
    Ok(())
}
