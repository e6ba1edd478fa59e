//! Single-pass recursive-descent parser with name resolution.
//!
//! Besides the grammar, the parser checks everything that can be decided
//! before running: the field header, digit ranges against q, unique and bound
//! names of the right kind, wavelet-set orders, and that step functions live
//! in O.

use std::collections::HashMap;
use std::fmt;

use lfpc_core::waveletlab::examples;
use lfpc_core::{ESet, Field};

use crate::ast::*;
use crate::eval;
use crate::lexer::{tokenize, Tok, Token};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError { line: pos.line, column: pos.column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type Result<T> = std::result::Result<T, ParseError>;

const RESERVED: &[&str] = &[
    "field", "set", "func", "step", "check", "compute", "builtin", "order", "mode", "as", "ind", "ball", "annulus",
    "ideal", "zeta", "t",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Set,
    Func,
    Step,
    /// A builtin multiwavelet, made of this many indicator functions.
    Family(usize),
}

impl Kind {
    fn describe(self) -> &'static str {
        match self {
            Kind::Set => "a set",
            Kind::Func => "a function",
            Kind::Step => "a step function",
            Kind::Family(_) => "a builtin family",
        }
    }
}

/// Which kinds a command argument may have.
#[derive(Clone, Copy)]
enum Accept {
    SetsOrFamilies,
    Functions,
    SetOnly,
    SingleFunction,
    Consistency,
}

impl Accept {
    fn allows(self, kind: Kind) -> bool {
        match self {
            Accept::SetsOrFamilies => matches!(kind, Kind::Set | Kind::Family(_)),
            Accept::Functions => matches!(kind, Kind::Set | Kind::Func | Kind::Family(_)),
            Accept::SetOnly => kind == Kind::Set,
            Accept::SingleFunction => matches!(kind, Kind::Set | Kind::Func),
            Accept::Consistency => true,
        }
    }

    fn expected(self) -> &'static str {
        match self {
            Accept::SetsOrFamilies => "sets or builtin families",
            Accept::Functions => "sets, functions, or builtin families",
            Accept::SetOnly => "a set",
            Accept::SingleFunction => "a set or a function",
            Accept::Consistency => "a step function or a multiwavelet",
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    field: Option<Field>,
    kinds: HashMap<String, Kind>,
    sets: HashMap<String, ESet>,
}

pub fn parse(text: &str) -> Result<Script> {
    let mut p = Parser { toks: tokenize(text)?, at: 0, field: None, kinds: HashMap::new(), sets: HashMap::new() };
    p.script()
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        &self.toks[(self.at + offset).min(self.toks.len() - 1)].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at < self.toks.len() - 1 {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(ParseError::new(self.pos(), message))
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn field(&self) -> &Field {
        self.field.as_ref().expect("header parsed first")
    }

    fn sym(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{c}`"))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        let hit = *self.peek() == Tok::Sym(c);
        if hit {
            self.bump();
        }
        hit
    }

    fn is_word(&self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        if self.is_word(word) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{word}`"))
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<Name> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(text) => {
                self.bump();
                Ok(Name { text, pos })
            }
            _ => self.unexpected(wanted),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        match *self.peek() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.unexpected("an integer"),
        }
    }

    fn small_uint(&mut self) -> Result<u32> {
        let pos = self.pos();
        let n = self.uint()?;
        u32::try_from(n).map_err(|_| ParseError::new(pos, format!("integer {n} is out of range")))
    }

    fn sint(&mut self) -> Result<i32> {
        let pos = self.pos();
        let negative = self.eat_sym('-');
        if !matches!(self.peek(), Tok::Int(_)) {
            return self.unexpected("an integer");
        }
        let n = self.uint()? as i64;
        let v = if negative { -n } else { n };
        i32::try_from(v).map_err(|_| ParseError::new(pos, format!("integer {v} is out of range")))
    }

    fn end_of_statement(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.unexpected("end of line"),
        }
    }

    fn skip_blank_lines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn script(&mut self) -> Result<Script> {
        self.skip_blank_lines();
        let header = self.header()?;
        let mut statements = Vec::new();
        loop {
            self.skip_blank_lines();
            if *self.peek() == Tok::Eof {
                break;
            }
            statements.push(self.statement()?);
        }
        Ok(Script { header, statements })
    }

    fn assignment(&mut self, key: &str) -> Result<()> {
        self.keyword(key)?;
        self.sym('=')
    }

    fn header(&mut self) -> Result<Header> {
        let pos = self.pos();
        self.keyword("field")?;
        self.assignment("p")?;
        let p = self.small_uint()?;
        self.assignment("c")?;
        let c = self.small_uint()?;
        let poly = if self.is_word("poly") {
            self.assignment("poly")?;
            let mut coeffs = vec![self.small_uint()?];
            while self.eat_sym(',') {
                coeffs.push(self.small_uint()?);
            }
            Some(coeffs)
        } else {
            None
        };
        self.end_of_statement()?;
        let field = eval::field(p, c, &poly).map_err(|e| ParseError::new(pos, format!("invalid field: {e}")))?;
        self.field = Some(field);
        Ok(Header { p, c, poly, pos })
    }

    fn bind(&mut self, name: &Name, kind: Kind) -> Result<()> {
        if RESERVED.contains(&name.text.as_str()) {
            return Err(ParseError::new(name.pos, format!("`{}` is a reserved word", name.text)));
        }
        if self.kinds.contains_key(&name.text) {
            return Err(ParseError::new(name.pos, format!("`{}` is already bound", name.text)));
        }
        self.kinds.insert(name.text.clone(), kind);
        Ok(())
    }

    fn lookup(&self, name: &Name) -> Result<Kind> {
        self.kinds.get(&name.text).copied().ok_or_else(|| ParseError::new(name.pos, format!("undefined name `{}`", name.text)))
    }

    fn statement(&mut self) -> Result<Statement> {
        let pos = self.pos();
        let word = match self.peek() {
            Tok::Ident(w) => w.clone(),
            _ => return self.unexpected("a statement"),
        };
        let kind = match word.as_str() {
            "set" => self.set_statement()?,
            "func" | "step" => self.function_statement(word == "step")?,
            "check" => StatementKind::Check(self.check()?),
            "compute" => StatementKind::Compute(self.compute()?),
            "builtin" => self.builtin()?,
            other => return self.error(format!("unknown statement `{other}`")),
        };
        self.end_of_statement()?;
        Ok(Statement { kind, pos })
    }

    fn set_statement(&mut self) -> Result<StatementKind> {
        self.bump();
        let name = self.ident("a set name")?;
        self.sym('=')?;
        let mut balls = vec![self.ball()?];
        while self.eat_sym('|') {
            balls.push(self.ball()?);
        }
        self.bind(&name, Kind::Set)?;
        let value = eval::balls(self.field(), &balls);
        self.sets.insert(name.text.clone(), value);
        Ok(StatementKind::Set { name, balls })
    }

    fn function_statement(&mut self, periodic: bool) -> Result<StatementKind> {
        self.bump();
        let name = self.ident("a function name")?;
        self.sym('=')?;
        let mut terms = vec![self.term()?];
        while self.eat_sym('+') {
            terms.push(self.term()?);
        }
        if periodic {
            for t in &terms {
                let s = eval::set_atoms(self.field(), &t.set, &self.sets);
                if !s.is_subset(self.field(), &ESet::ideal(0)) {
                    return Err(ParseError::new(t.coeff.pos, "a step function is given by its cells in O"));
                }
            }
            self.bind(&name, Kind::Step)?;
            Ok(StatementKind::Step { name, terms })
        } else {
            self.bind(&name, Kind::Func)?;
            Ok(StatementKind::Func { name, terms })
        }
    }

    fn ball(&mut self) -> Result<BallExpr> {
        let pos = self.pos();
        let word = match self.peek() {
            Tok::Ident(w) => w.clone(),
            _ => return self.unexpected("`ball`, `annulus`, or `ideal`"),
        };
        let kind = match word.as_str() {
            "ball" => {
                self.bump();
                self.sym('(')?;
                let center = self.laurent()?;
                self.sym(';')?;
                let level = self.sint()?;
                self.sym(')')?;
                BallKind::Ball { center, level }
            }
            "annulus" | "ideal" => {
                self.bump();
                self.sym('(')?;
                let k = self.sint()?;
                self.sym(')')?;
                if word == "annulus" {
                    BallKind::Annulus(k)
                } else {
                    BallKind::Ideal(k)
                }
            }
            _ => return self.unexpected("`ball`, `annulus`, or `ideal`"),
        };
        Ok(BallExpr { kind, pos })
    }

    fn digit(&mut self) -> Result<u32> {
        let pos = self.pos();
        let n = self.uint()?;
        let q = self.field().q() as u64;
        if n >= q {
            return Err(ParseError::new(pos, format!("digit {n} is not an element of GF({q})")));
        }
        Ok(n as u32)
    }

    fn power_of_t(&mut self) -> Result<i32> {
        self.keyword("t")?;
        if self.eat_sym('^') {
            if !matches!(self.peek(), Tok::Int(_) | Tok::Sym('-')) {
                return self.unexpected("an integer exponent");
            }
            self.sint()
        } else {
            Ok(1)
        }
    }

    fn laurent(&mut self) -> Result<LaurentLit> {
        let pos = self.pos();
        let mut terms = Vec::new();
        loop {
            let term = if self.is_word("t") {
                (1, self.power_of_t()?)
            } else if matches!(self.peek(), Tok::Int(_)) {
                let d = self.digit()?;
                if self.eat_sym('*') {
                    (d, self.power_of_t()?)
                } else {
                    (d, 0)
                }
            } else {
                return self.unexpected("a digit or a power of `t`");
            };
            terms.push(term);
            if !self.eat_sym('+') {
                break;
            }
        }
        Ok(LaurentLit { terms, pos })
    }

    fn zeta_power(&mut self) -> Result<u32> {
        self.keyword("zeta")?;
        if self.eat_sym('^') {
            self.small_uint()
        } else {
            Ok(1)
        }
    }

    fn coeff_term(&mut self, negative: bool) -> Result<CoeffTerm> {
        if self.is_word("zeta") {
            return Ok(CoeffTerm { negative, num: 1, den: 1, zeta: Some(self.zeta_power()?) });
        }
        let pos = self.pos();
        let num = self.uint()?;
        let den = if self.eat_sym('/') { self.uint()? } else { 1 };
        if den == 0 {
            return Err(ParseError::new(pos, "zero denominator"));
        }
        if i64::try_from(num).is_err() || i64::try_from(den).is_err() {
            return Err(ParseError::new(pos, "coefficient is out of range"));
        }
        let zeta = if *self.peek() == Tok::Sym('*') && matches!(self.peek_at(1), Tok::Ident(s) if s == "zeta") {
            self.bump();
            Some(self.zeta_power()?)
        } else {
            None
        };
        Ok(CoeffTerm { negative, num, den, zeta })
    }

    fn coeff(&mut self) -> Result<Coeff> {
        let pos = self.pos();
        let mut terms = Vec::new();
        if self.eat_sym('(') {
            let negative = self.eat_sym('-');
            terms.push(self.coeff_term(negative)?);
            loop {
                let negative = if self.eat_sym('+') {
                    false
                } else if self.eat_sym('-') {
                    true
                } else {
                    break;
                };
                terms.push(self.coeff_term(negative)?);
            }
            self.sym(')')?;
        } else {
            let negative = self.eat_sym('-');
            terms.push(self.coeff_term(negative)?);
        }
        Ok(Coeff { terms, pos })
    }

    fn term(&mut self) -> Result<Term> {
        let coeff = self.coeff()?;
        self.sym('*')?;
        self.keyword("ind")?;
        self.sym('(')?;
        let mut set = vec![self.set_atom()?];
        while self.eat_sym('|') {
            set.push(self.set_atom()?);
        }
        self.sym(')')?;
        Ok(Term { coeff, set })
    }

    fn set_atom(&mut self) -> Result<SetAtom> {
        if ["ball", "annulus", "ideal"].iter().any(|w| self.is_word(w)) {
            return Ok(SetAtom::Ball(self.ball()?));
        }
        let name = self.ident("a set name or a ball")?;
        match self.lookup(&name)? {
            Kind::Set => Ok(SetAtom::Name(name)),
            other => Err(ParseError::new(name.pos, format!("`{}` is {}, not a set", name.text, other.describe()))),
        }
    }

    /// Names up to the end of the line or one of the `stop` keywords.
    fn names(&mut self, accept: Accept, stop: &[&str]) -> Result<Vec<Name>> {
        let mut names = Vec::new();
        while let Tok::Ident(w) = self.peek() {
            if stop.contains(&w.as_str()) {
                break;
            }
            let name = self.ident("a name")?;
            let kind = self.lookup(&name)?;
            if !accept.allows(kind) {
                return Err(ParseError::new(
                    name.pos,
                    format!("`{}` is {}; expected {}", name.text, kind.describe(), accept.expected()),
                ));
            }
            names.push(name);
        }
        if names.is_empty() {
            return self.unexpected("a name");
        }
        Ok(names)
    }

    fn single(&mut self, accept: Accept) -> Result<Name> {
        let pos = self.pos();
        let mut names = self.names(accept, &["mode"])?;
        if names.len() > 1 {
            return Err(ParseError::new(pos, "expected exactly one name"));
        }
        Ok(names.remove(0))
    }

    fn frame_mode(&mut self) -> Result<FrameMode> {
        self.keyword("mode")?;
        let word = self.ident("`parseval` or `orthonormal`")?;
        match word.text.as_str() {
            "parseval" => Ok(FrameMode::Parseval),
            "orthonormal" => Ok(FrameMode::Orthonormal),
            _ => Err(ParseError::new(word.pos, "expected `parseval` or `orthonormal`")),
        }
    }

    fn equation_mode(&mut self) -> Result<EquationMode> {
        self.keyword("mode")?;
        let word = self.ident("`inequality` or `equality`")?;
        match word.text.as_str() {
            "inequality" => Ok(EquationMode::Inequality),
            "equality" => Ok(EquationMode::Equality),
            _ => Err(ParseError::new(word.pos, "expected `inequality` or `equality`")),
        }
    }

    fn piece_count(&self, names: &[Name]) -> usize {
        names
            .iter()
            .map(|n| match self.kinds[&n.text] {
                Kind::Family(size) => size,
                _ => 1,
            })
            .sum()
    }

    fn check(&mut self) -> Result<Check> {
        self.bump();
        let sub = self.ident("a check name")?;
        Ok(match sub.text.as_str() {
            "wavelet-set" => {
                let names = self.names(Accept::SetsOrFamilies, &["order", "mode"])?;
                self.keyword("order")?;
                let order_pos = self.pos();
                let order = self.small_uint()?;
                if order as usize != self.piece_count(&names) {
                    return Err(ParseError::new(
                        order_pos,
                        format!("order {order} does not match the {} listed pieces", self.piece_count(&names)),
                    ));
                }
                let mode = self.frame_mode()?;
                Check::WaveletSet { names, order, mode }
            }
            "parseval-wavelet" => Check::ParsevalWavelet(self.names(Accept::Functions, &[])?),
            "orthonormal-wavelet" => Check::OrthonormalWavelet(self.names(Accept::Functions, &[])?),
            "semi-orthogonal" => Check::SemiOrthogonal(self.names(Accept::Functions, &[])?),
            "mra" => Check::Mra(self.names(Accept::Functions, &[])?),
            "scaling-set" => {
                let name = self.single(Accept::SetOnly)?;
                let mode = self.frame_mode()?;
                Check::ScalingSet { name, mode }
            }
            "scaling-function" => Check::ScalingFunction(self.single(Accept::SingleFunction)?),
            "consistency" => {
                let names = self.names(Accept::Consistency, &["order", "mode"])?;
                let steps = names.iter().filter(|n| self.kinds[&n.text] == Kind::Step).count();
                if steps > 0 && names.len() > 1 {
                    return Err(ParseError::new(names[0].pos, "a step function must be the only argument"));
                }
                self.keyword("order")?;
                let order = self.small_uint()?;
                let mode = self.equation_mode()?;
                Check::Consistency { names, order, mode }
            }
            other => return Err(ParseError::new(sub.pos, format!("unknown check `{other}`"))),
        })
    }

    fn compute(&mut self) -> Result<Compute> {
        self.bump();
        let sub = self.ident("a computation name")?;
        Ok(match sub.text.as_str() {
            "multiplicity" => Compute::Multiplicity(self.names(Accept::Functions, &[])?),
            "spectral" => Compute::Spectral(self.names(Accept::Functions, &[])?),
            "fourier" => Compute::Fourier(self.single(Accept::SingleFunction)?),
            other => return Err(ParseError::new(sub.pos, format!("unknown computation `{other}`"))),
        })
    }

    fn builtin(&mut self) -> Result<StatementKind> {
        self.bump();
        let which = self.ident("a builtin example")?;
        let q = self.field().q() as usize;
        let example = match which.text.as_str() {
            "shannon" => Example::Shannon,
            "ex315a" | "ex315b" => {
                self.sym('(')?;
                let m = self.sint()?;
                self.sym(')')?;
                if which.text == "ex315a" {
                    Example::AnnulusFamily(m)
                } else {
                    Example::ShiftedBalls(m)
                }
            }
            "ex46" => {
                self.sym('(')?;
                let v = self.ident("`A`, `B`, or `C`")?;
                let variant = match v.text.as_str() {
                    "A" => ScalingVariant::A,
                    "B" => ScalingVariant::B,
                    "C" => ScalingVariant::C,
                    _ => return Err(ParseError::new(v.pos, "expected `A`, `B`, or `C`")),
                };
                let m = if self.eat_sym(',') { Some(self.sint()?) } else { None };
                self.sym(')')?;
                Example::ScalingSet(variant, m)
            }
            other => return Err(ParseError::new(which.pos, format!("unknown builtin `{other}`"))),
        };
        let alias = if self.is_word("as") {
            self.bump();
            Some(self.ident("a name")?)
        } else {
            None
        };
        let name = Name { text: alias.as_ref().map_or_else(|| example.default_name(), |a| a.text.clone()), pos: which.pos };
        match &example {
            Example::ScalingSet(v, m) => {
                self.bind(&name, Kind::Set)?;
                let s = examples::example_46_scaling(crate::runner::scaling_example(*v), m.unwrap_or(1));
                self.sets.insert(name.text, s);
            }
            Example::AnnulusFamily(_) => self.bind(&name, Kind::Family(1))?,
            Example::Shannon | Example::ShiftedBalls(_) => self.bind(&name, Kind::Family(q - 1))?,
        }
        Ok(StatementKind::Builtin { example, alias })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_binding() {
        let s = parse("field p=2 c=1\nset W = annulus(-1)\ncheck wavelet-set W order 1 mode orthonormal\n").unwrap();
        assert_eq!(s.header.p, 2);
        assert_eq!(s.statements.len(), 2);
    }

    #[test]
    fn missing_exponent_is_reported_at_the_exponent() {
        let e = parse("field p=2 c=1\nset B = ball(t^; 0)").unwrap_err();
        assert_eq!((e.line, e.column), (2, 16));
        assert!(e.message.contains("exponent"), "{e}");
    }

    #[test]
    fn undefined_names_and_digits_out_of_range() {
        let e = parse("field p=3 c=1\ncheck parseval-wavelet psi").unwrap_err();
        assert_eq!((e.line, e.column), (2, 24));
        let e = parse("field p=3 c=1\nset B = ball(3*t^-1; 0)").unwrap_err();
        assert!(e.message.contains("GF(3)"));
        let e = parse("field p=4 c=1").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn coefficient_forms() {
        let s = parse("field p=3 c=1\nfunc f = 1/2 * ind(ideal(0)) + (1 - zeta^2)*ind(annulus(-1)) + -zeta*ind(ball(t^-2; -1))").unwrap();
        let StatementKind::Func { terms, .. } = &s.statements[0].kind else { panic!() };
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[1].coeff.terms.len(), 2);
        assert!(terms[2].coeff.terms[0].negative);
    }

    #[test]
    fn order_must_match_pieces() {
        let e = parse("field p=3 c=1\nbuiltin shannon\ncheck wavelet-set shannon order 1 mode parseval").unwrap_err();
        assert!(e.message.contains("order"));
    }

    #[test]
    fn step_functions_live_in_o() {
        assert!(parse("field p=2 c=1\nstep m = 2*ind(ideal(0))").is_ok());
        assert!(parse("field p=2 c=1\nstep m = 2*ind(ideal(-1))").is_err());
    }
}
